#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lassovar/combine.hpp"
#include "lassovar/solver.hpp"

namespace lassovar {

/// One fitted point along a path: `param` is lambda for penalized estimators and the
/// lag order m for least squares.
struct PathPoint {
    double param = 0.0;
    CoefTensor coef;
    FitStats stats;
};

struct LambdaPath {
    Estimator estimator = Estimator::Lasso;
    std::vector<PathPoint> points;
};

/// Gram-form pieces of a design, shared across penalties and grid points.
struct DesignGram {
    Eigen::MatrixXd gram;  // X'X
    Eigen::MatrixXd xty;   // X'Y (columns = equations)
    Eigen::VectorXd yty;   // per-equation y'y
    double lipschitz = 0.0;
};

/// Throws std::runtime_error on non-finite design entries.
DesignGram make_design_gram(const LagDesign& design);

/// Fits every equation of the design down the grid with warm starts (each lambda
/// starts from the previous solution; the first from zero). Loss/df/BIC per point;
/// points with loss <= loss_floor(design) or fewer than two design rows are
/// marked invalid and get no BIC.
LambdaPath fit_path(const LagDesign& design, PenaltyKind kind, const LambdaGrid& grid,
                    const SolverConfig& config, double zero_tol = 1e-8);

/// Same, reusing a precomputed DesignGram (the backtest shares one across penalties).
LambdaPath fit_path(const LagDesign& design, const DesignGram& dg, PenaltyKind kind,
                    const LambdaGrid& grid, const SolverConfig& config, double zero_tol = 1e-8);

/// Least-squares path over lag orders m = 1..p_ls at horizon h, zero-padded to p_pad
/// lags so coefficient tensors share one shape. Minimum-norm solutions via a
/// rank-revealing decomposition; interpolating fits are marked invalid.
/// df = q_eff^2 * m. `centered` is the training window (rows = time).
LambdaPath fit_ols_by_order(const Eigen::MatrixXd& centered, int p_ls, int h, int p_pad,
                            int subset = -1);

/// Largest lag order with q_eff * m < rows available for estimation, capped to p_cap
/// and to orders that leave at least one design row. Returns 0 when none fits.
int max_ls_order(Eigen::Index window_rows, Eigen::Index q_eff, int h, int p_cap);

/// Validity floor: fits with loss below 1e-12 * (0.5 ||Y||_F^2) interpolate to
/// numerical noise and are excluded from combination.
double loss_floor(const LagDesign& design);

/// Per-point BIC-combined lag-length matrix plus the stats needed by reports.
struct PathSummary {
    std::vector<FitStats> stats;
    Eigen::VectorXd weights;              // combination weights used
    Eigen::MatrixXd weighted_lag_lengths; // q_eq x q_series
    std::size_t bic_argmin = 0;
};

PathSummary summarize_path(const LambdaPath& path, WeightScheme scheme, double zero_tol = 1e-8);

}  // namespace lassovar
