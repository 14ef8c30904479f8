#pragma once

#include <Eigen/Dense>
#include <optional>

#include "lassovar/prox.hpp"

namespace lassovar {

enum class Estimator { OLS, Lasso, Hierarchical, Ordered };

/// Estimator used for the penalized kinds; OLS has no penalty.
PenaltyKind to_penalty(Estimator e);

const char* estimator_name(Estimator e);  // "ols", "lasso", "hierarchical", "ordered"

/// Coefficients of a full system fit. Row i holds equation i (the regression for
/// series i), laid out series-major / lag-minor exactly like LagDesign columns:
/// entry (i, j*p + l) is the loading of equation i on series j at lag l+1.
/// For univariate fits q_equations == q_series == 1.
struct CoefTensor {
    Eigen::Index q_equations = 0;
    Eigen::Index q_series = 0;
    Eigen::Index p = 0;
    Estimator estimator = Estimator::Lasso;
    Eigen::MatrixXd beta;  // q_equations x (q_series * p)
    // Ordered-penalty split parts, same shape as beta; empty for other estimators.
    Eigen::MatrixXd beta_plus;
    Eigen::MatrixXd beta_minus;

    double coef(Eigen::Index equation, Eigen::Index series, Eigen::Index lag1) const {
        return beta(equation, series * p + (lag1 - 1));  // lag1 is 1-based
    }
};

/// Per-fit diagnostics used by model combination.
struct FitStats {
    double loss = 0.0;  // 0.5 * ||Y - X B||_F^2, summed over equations
    long df = 0;        // count of |beta| > zero_tol
    double bic = 0.0;   // n log(loss) + df log(n); only meaningful when valid
    Eigen::Index n = 0; // design rows
    bool valid = true;  // false: interpolating / degenerate fit, excluded from weights
};

/// Bayesian information criterion on the summed squared-error loss.
/// Requires loss > 0 and n >= 2 (else std::invalid_argument), df >= 0.
double bic(double loss, long df, Eigen::Index n);

/// Per-equation, per-series largest active lag: entry (i, j) is the largest l with
/// |beta(i, j, l)| > zero_tol, or 0 when the whole block is zero.
Eigen::MatrixXd lag_lengths(const CoefTensor& coef, double zero_tol);

}  // namespace lassovar
