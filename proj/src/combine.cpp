#include "lassovar/combine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lassovar {

const char* weight_scheme_name(WeightScheme s) {
    switch (s) {
        case WeightScheme::BIC: return "bic";
        case WeightScheme::Equal: return "equal";
        case WeightScheme::MSE: return "mse";
    }
    return "?";
}

LambdaGrid build_grid_values(double lam_max, Eigen::Index params, Eigen::Index rows, int L,
                             double inner_ratio) {
    if (L < 2) throw std::invalid_argument("build_grid: need L >= 2");
    if (!(lam_max > 0)) throw std::invalid_argument("build_grid: lambda_max must be positive");
    if (!(inner_ratio > 0) || !(inner_ratio < 1))
        throw std::invalid_argument("build_grid: inner_ratio must be in (0, 1)");

    LambdaGrid grid;
    const bool overdetermined = params <= rows;
    // overdetermined designs can afford the unpenalized fit, so the grid ends at 0;
    // otherwise the floor stays at lambda_max / 10
    const double ratio = overdetermined ? inner_ratio : 0.1;
    const int K = overdetermined ? L - 1 : L;
    grid.values.reserve(static_cast<std::size_t>(L));
    for (int k = 0; k < K; ++k) {
        const double e = (K == 1) ? 0.0 : static_cast<double>(k) / static_cast<double>(K - 1);
        grid.values.push_back(lam_max * std::pow(ratio, e));
    }
    if (overdetermined) grid.values.push_back(0.0);
    return grid;
}

LambdaGrid build_grid(const LagDesign& design, PenaltyKind kind, int L, double inner_ratio) {
    return build_grid_values(lambda_max(kind, design), design.X.cols(), design.n, L, inner_ratio);
}

Eigen::VectorXd combination_weights(const std::vector<FitStats>& stats, WeightScheme scheme) {
    const Eigen::Index L = static_cast<Eigen::Index>(stats.size());
    if (L == 0) throw std::invalid_argument("combination_weights: empty stats");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(L);
    long n_valid = 0;
    for (const auto& s : stats) n_valid += s.valid ? 1 : 0;
    if (n_valid == 0) throw std::runtime_error("combination_weights: no valid fits");

    switch (scheme) {
        case WeightScheme::BIC: {
            // softmax of -BIC/2, shifted by the max exponent for stability
            double shift = -std::numeric_limits<double>::infinity();
            for (Eigen::Index m = 0; m < L; ++m)
                if (stats[static_cast<std::size_t>(m)].valid)
                    shift = std::max(shift, -0.5 * stats[static_cast<std::size_t>(m)].bic);
            for (Eigen::Index m = 0; m < L; ++m)
                if (stats[static_cast<std::size_t>(m)].valid)
                    w(m) = std::exp(-0.5 * stats[static_cast<std::size_t>(m)].bic - shift);
            break;
        }
        case WeightScheme::Equal: {
            for (Eigen::Index m = 0; m < L; ++m)
                if (stats[static_cast<std::size_t>(m)].valid) w(m) = 1.0;
            break;
        }
        case WeightScheme::MSE: {
            // inverse mean squared error; the per-equation count cancels in the
            // normalization, so n/loss suffices
            for (Eigen::Index m = 0; m < L; ++m) {
                const auto& s = stats[static_cast<std::size_t>(m)];
                if (s.valid) w(m) = static_cast<double>(s.n) / s.loss;
            }
            break;
        }
    }
    const double total = w.sum();
    if (!(total > 0) || !std::isfinite(total))
        throw std::runtime_error("combination_weights: degenerate weights");
    return w / total;
}

std::size_t select_by_bic(const std::vector<FitStats>& stats) {
    std::size_t best = stats.size();
    for (std::size_t m = 0; m < stats.size(); ++m) {
        if (!stats[m].valid) continue;
        if (best == stats.size() || stats[m].bic < stats[best].bic) best = m;
    }
    if (best == stats.size()) throw std::runtime_error("select_by_bic: no valid fits");
    return best;
}

ForecastSet combine_forecasts(const Eigen::MatrixXd& individual, const Eigen::VectorXd& weights,
                              WeightScheme scheme) {
    if (individual.rows() != weights.size())
        throw std::invalid_argument("combine_forecasts: weights/forecasts size mismatch");
    for (Eigen::Index m = 0; m < individual.rows(); ++m)
        for (Eigen::Index i = 0; i < individual.cols(); ++i)
            if (!std::isfinite(individual(m, i)))
                throw std::runtime_error("combine_forecasts: non-finite forecast at grid point " +
                                         std::to_string(m));
    ForecastSet out;
    out.individual = individual;
    out.weights = weights;
    out.scheme = scheme;
    out.combined = individual.transpose() * weights;
    return out;
}

Eigen::MatrixXd combined_lag_lengths(const std::vector<Eigen::MatrixXd>& per_fit,
                                     const Eigen::VectorXd& weights) {
    if (static_cast<Eigen::Index>(per_fit.size()) != weights.size())
        throw std::invalid_argument("combined_lag_lengths: size mismatch");
    if (per_fit.empty()) throw std::invalid_argument("combined_lag_lengths: empty input");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(per_fit[0].rows(), per_fit[0].cols());
    for (std::size_t m = 0; m < per_fit.size(); ++m) {
        if (per_fit[m].rows() != out.rows() || per_fit[m].cols() != out.cols())
            throw std::invalid_argument("combined_lag_lengths: shape mismatch");
        out += weights(static_cast<Eigen::Index>(m)) * per_fit[m];
    }
    return out;
}

}  // namespace lassovar
