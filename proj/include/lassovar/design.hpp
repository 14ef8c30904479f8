#pragma once

#include <Eigen/Dense>

#include "lassovar/panel.hpp"

namespace lassovar {

/// Direct-forecast lag regression at horizon h.
///
/// Row r of X stacks lagged values [series 0 lags 1..p | series 1 lags 1..p | ...]:
/// column j*p + (l-1) holds series j at lag l relative to the target row.
/// Y row r holds the targets h steps past the most recent lag.
/// With subset >= 0 both the lag columns and the target are restricted to that
/// one series (the univariate case), so X has p columns and Y one.
struct LagDesign {
    Eigen::MatrixXd X;  // n x (q_effective * p)
    Eigen::MatrixXd Y;  // n x q_targets (q_targets == q_effective here)
    Eigen::Index n = 0;
    Eigen::Index p = 0;
    Eigen::Index h = 0;
    Eigen::Index q_effective = 0;  // series entering the lag block
    int subset = -1;               // -1: all series; else the single modeled series
};

/// Builds the design from a centered T x q matrix. Requires p >= 1, h >= 1 and
/// T >= p + h (at least one usable row); otherwise throws std::invalid_argument.
LagDesign build_design(const Eigen::MatrixXd& centered, int p, int h, int subset = -1);

inline LagDesign build_design(const TimeSeriesPanel& panel, int p, int h, int subset = -1) {
    return build_design(panel.values, p, h, subset);
}

/// Lag vector for forecasting from the final rows of `centered`: the regressor row
/// that pairs with a target h steps past the last observation.
Eigen::VectorXd forecast_row(const Eigen::MatrixXd& centered, int p, int subset = -1);

}  // namespace lassovar
