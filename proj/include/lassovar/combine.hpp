#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "lassovar/coef.hpp"
#include "lassovar/design.hpp"
#include "lassovar/prox.hpp"

namespace lassovar {

/// Penalty levels in strictly decreasing order; values[0] is the zero-solution level.
struct LambdaGrid {
    std::vector<double> values;
    Eigen::Index L() const { return static_cast<Eigen::Index>(values.size()); }
};

enum class WeightScheme { BIC, Equal, MSE };

const char* weight_scheme_name(WeightScheme s);

/// Log-spaced grid from lambda_max down. Overdetermined designs (params <= rows) get
/// L-1 points spanning [lambda_max * inner_ratio, lambda_max] plus an exact 0;
/// underdetermined ones get L points down to lambda_max / 10 and no 0.
/// Requires L >= 2.
LambdaGrid build_grid(const LagDesign& design, PenaltyKind kind, int L,
                      double inner_ratio = 1e-3);

/// Grid values from a precomputed lambda_max; params/rows pick the branch above.
LambdaGrid build_grid_values(double lam_max, Eigen::Index params, Eigen::Index rows, int L,
                             double inner_ratio = 1e-3);

/// Combination weights over a fitted path. Invalid entries get weight 0; at least one
/// entry must be valid (else std::runtime_error). BIC: softmax of -BIC/2 (max-shifted).
/// Equal: uniform over valid entries. MSE: proportional to n*q/(2*loss), i.e. inverse
/// mean squared error. Output is nonnegative and sums to 1.
Eigen::VectorXd combination_weights(const std::vector<FitStats>& stats, WeightScheme scheme);

/// Index of the valid entry with the smallest BIC; ties resolve to the earlier index
/// (the sparser fit, since paths run from heaviest penalty down).
std::size_t select_by_bic(const std::vector<FitStats>& stats);

/// One model's forecasts at a single origin/horizon across the path.
struct ForecastSet {
    Eigen::MatrixXd individual;  // L x q, uncentered log scale
    Eigen::VectorXd weights;     // L, sums to 1
    Eigen::VectorXd combined;    // q
    WeightScheme scheme = WeightScheme::BIC;
};

/// combined = individual' * weights. Throws std::runtime_error naming the grid point
/// if any individual forecast is non-finite, std::invalid_argument on size mismatch.
ForecastSet combine_forecasts(const Eigen::MatrixXd& individual, const Eigen::VectorXd& weights,
                              WeightScheme scheme);

/// Weighted average of per-fit lag-length matrices (all the same shape).
Eigen::MatrixXd combined_lag_lengths(const std::vector<Eigen::MatrixXd>& per_fit,
                                     const Eigen::VectorXd& weights);

}  // namespace lassovar
