#include "lassovar/coef.hpp"

#include <cmath>
#include <stdexcept>

namespace lassovar {

PenaltyKind to_penalty(Estimator e) {
    switch (e) {
        case Estimator::Lasso: return PenaltyKind::Lasso;
        case Estimator::Hierarchical: return PenaltyKind::Hierarchical;
        case Estimator::Ordered: return PenaltyKind::Ordered;
        case Estimator::OLS: break;
    }
    throw std::invalid_argument("to_penalty: OLS has no penalty");
}

const char* estimator_name(Estimator e) {
    switch (e) {
        case Estimator::OLS: return "ols";
        case Estimator::Lasso: return "lasso";
        case Estimator::Hierarchical: return "hierarchical";
        case Estimator::Ordered: return "ordered";
    }
    return "?";
}

double bic(double loss, long df, Eigen::Index n) {
    if (!(loss > 0.0)) throw std::invalid_argument("bic: loss must be positive");
    if (n < 2) throw std::invalid_argument("bic: need n >= 2");
    if (df < 0) throw std::invalid_argument("bic: df must be >= 0");
    const double dn = static_cast<double>(n);
    return dn * std::log(loss) + static_cast<double>(df) * std::log(dn);
}

Eigen::MatrixXd lag_lengths(const CoefTensor& coef, double zero_tol) {
    if (zero_tol < 0) throw std::invalid_argument("lag_lengths: zero_tol must be >= 0");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coef.q_equations, coef.q_series);
    for (Eigen::Index i = 0; i < coef.q_equations; ++i)
        for (Eigen::Index j = 0; j < coef.q_series; ++j)
            for (Eigen::Index l = coef.p; l >= 1; --l)
                if (std::abs(coef.beta(i, j * coef.p + (l - 1))) > zero_tol) {
                    out(i, j) = static_cast<double>(l);
                    break;
                }
    return out;
}

}  // namespace lassovar
