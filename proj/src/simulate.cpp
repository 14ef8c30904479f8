#include "lassovar/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <random>
#include <stdexcept>
#include <string>

namespace lassovar {

namespace {

void check_coef(const std::vector<Eigen::MatrixXd>& coef) {
    if (coef.empty()) throw std::invalid_argument("simulate: empty coefficient list");
    const Eigen::Index q = coef[0].rows();
    if (q < 1) throw std::invalid_argument("simulate: empty coefficient matrix");
    for (const auto& A : coef)
        if (A.rows() != q || A.cols() != q)
            throw std::invalid_argument("simulate: coefficient matrices must all be q x q");
}

}  // namespace

double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& coef) {
    check_coef(coef);
    const Eigen::Index q = coef[0].rows();
    const Eigen::Index p = static_cast<Eigen::Index>(coef.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(q * p, q * p);
    for (Eigen::Index l = 0; l < p; ++l)
        companion.block(0, l * q, q, q) = coef[static_cast<std::size_t>(l)];
    if (p > 1)
        companion.block(q, 0, q * (p - 1), q * (p - 1)) =
            Eigen::MatrixXd::Identity(q * (p - 1), q * (p - 1));
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd simulate_var(const SimSpec& spec) {
    check_coef(spec.coef);
    const Eigen::Index q = spec.coef[0].rows();
    const Eigen::Index p = static_cast<Eigen::Index>(spec.coef.size());
    if (spec.T < 1) throw std::invalid_argument("simulate: T must be >= 1");
    if (spec.burn_in < 0) throw std::invalid_argument("simulate: negative burn-in");
    if (!(spec.noise_sd >= 0)) throw std::invalid_argument("simulate: negative noise sd");
    if (spec.mean_offset.size() != 0 && spec.mean_offset.size() != q)
        throw std::invalid_argument("simulate: mean offset size mismatch");
    const double radius = companion_spectral_radius(spec.coef);
    if (!(radius < 1.0))
        throw std::invalid_argument("simulate: unstable system, spectral radius " +
                                    std::to_string(radius));

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const Eigen::Index total = spec.burn_in + spec.T;
    Eigen::MatrixXd path(total, q);
    Eigen::VectorXd eps(q);
    for (Eigen::Index t = 0; t < total; ++t) {
        for (Eigen::Index i = 0; i < q; ++i) eps(i) = normal(rng);
        Eigen::VectorXd y = spec.noise_sd * eps;
        for (Eigen::Index l = 1; l <= p; ++l) {
            if (t - l < 0) break;  // zero initial state
            y.noalias() += spec.coef[static_cast<std::size_t>(l - 1)] * path.row(t - l).transpose();
        }
        path.row(t) = y.transpose();
    }

    Eigen::MatrixXd out = path.bottomRows(spec.T);
    if (spec.mean_offset.size() == q) out.rowwise() += spec.mean_offset.transpose();
    return out;
}

TimeSeriesPanel simulated_panel(const Eigen::MatrixXd& uncentered_log) {
    const Eigen::Index T = uncentered_log.rows(), q = uncentered_log.cols();
    if (T < 1 || q < 1) throw std::invalid_argument("simulated_panel: empty matrix");
    TimeSeriesPanel panel;
    panel.dates.reserve(static_cast<std::size_t>(T));
    for (Eigen::Index k = 0; k < T; ++k) {
        Date d;
        d.year = 2000 + static_cast<int>(k) / 12;
        d.month = 1 + static_cast<int>(k) % 12;
        d.day = 0;
        panel.dates.push_back(d);
    }
    panel.names.reserve(static_cast<std::size_t>(q));
    for (Eigen::Index j = 0; j < q; ++j) panel.names.push_back("s" + std::to_string(j + 1));
    panel.means = uncentered_log.colwise().mean().transpose();
    panel.values = uncentered_log.rowwise() - panel.means.transpose();
    return panel;
}

}  // namespace lassovar
