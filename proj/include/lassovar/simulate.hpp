#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lassovar/panel.hpp"

namespace lassovar {

/// Gaussian VAR(p) generator spec. coef[l] is the q x q matrix on lag l+1
/// (row = equation, col = source series).
struct SimSpec {
    int T = 300;
    unsigned long long seed = 7;
    std::vector<Eigen::MatrixXd> coef;
    double noise_sd = 1.0;
    Eigen::VectorXd mean_offset;  // per-series level added after simulation
    int burn_in = 200;
};

/// Spectral radius of the VAR companion matrix.
double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& coef);

/// Simulates T observations after burn-in (zero initial state, mt19937_64, normals
/// drawn equation-major per time step). Requires spectral radius < 1, T >= 1.
/// Returns the uncentered T x q matrix (offsets added).
Eigen::MatrixXd simulate_var(const SimSpec& spec);

/// Wraps a simulated log-scale matrix as a centered panel: synthetic monthly dates
/// from 2000-01, names s1..sq, values = matrix minus its column means.
TimeSeriesPanel simulated_panel(const Eigen::MatrixXd& uncentered_log);

}  // namespace lassovar
