#include "lassovar/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lassovar {

double loss_floor(const LagDesign& design) {
    return 1e-12 * 0.5 * design.Y.squaredNorm();
}

DesignGram make_design_gram(const LagDesign& design) {
    if (!design.X.allFinite() || !design.Y.allFinite())
        throw std::runtime_error("make_design_gram: non-finite values in design");
    DesignGram dg;
    dg.gram = design.X.transpose() * design.X;
    dg.xty = design.X.transpose() * design.Y;
    dg.yty = design.Y.colwise().squaredNorm();
    dg.lipschitz = power_iteration_top_eigenvalue(dg.gram);
    return dg;
}

namespace {

Estimator estimator_of(PenaltyKind kind) {
    switch (kind) {
        case PenaltyKind::Lasso: return Estimator::Lasso;
        case PenaltyKind::Hierarchical: return Estimator::Hierarchical;
        case PenaltyKind::Ordered: return Estimator::Ordered;
    }
    return Estimator::Lasso;
}

void finalize_stats(LambdaPath& path, const LagDesign& design, double zero_tol) {
    const double floor = loss_floor(design);
    for (auto& pt : path.points) {
        pt.stats.n = design.n;
        pt.stats.df = (pt.coef.beta.array().abs() > zero_tol).count();
        pt.stats.valid = pt.stats.loss > floor && pt.stats.loss > 0.0 && pt.stats.n >= 2;
        pt.stats.bic = pt.stats.valid ? bic(pt.stats.loss, pt.stats.df, pt.stats.n) : 0.0;
    }
}

}  // namespace

LambdaPath fit_path(const LagDesign& design, const DesignGram& dg, PenaltyKind kind,
                    const LambdaGrid& grid, const SolverConfig& config, double zero_tol) {
    if (grid.values.empty()) throw std::invalid_argument("fit_path: empty grid");
    const Eigen::Index q_eq = design.Y.cols();
    const Eigen::Index d = design.X.cols();
    const GroupLayout layout{design.q_effective, design.p};
    const Eigen::Index L = grid.L();
    const bool ordered = kind == PenaltyKind::Ordered;

    LambdaPath path;
    path.estimator = estimator_of(kind);
    path.points.resize(static_cast<std::size_t>(L));
    for (Eigen::Index m = 0; m < L; ++m) {
        auto& pt = path.points[static_cast<std::size_t>(m)];
        pt.param = grid.values[static_cast<std::size_t>(m)];
        pt.coef.q_equations = q_eq;
        pt.coef.q_series = design.q_effective;
        pt.coef.p = design.p;
        pt.coef.estimator = path.estimator;
        pt.coef.beta.resize(q_eq, d);
        if (ordered) {
            pt.coef.beta_plus.resize(q_eq, d);
            pt.coef.beta_minus.resize(q_eq, d);
        }
        pt.stats = FitStats{};
    }

    const Eigen::Index D = ordered ? 2 * d : d;
    for (Eigen::Index eq = 0; eq < q_eq; ++eq) {
        Eigen::VectorXd warm = Eigen::VectorXd::Zero(D);
        for (Eigen::Index m = 0; m < L; ++m) {
            auto& pt = path.points[static_cast<std::size_t>(m)];
            SolveResult r = solve_gram(dg.gram, dg.xty.col(eq), dg.yty(eq), dg.lipschitz,
                                       pt.param, kind, layout, config, &warm);
            pt.coef.beta.row(eq) = r.beta.transpose();
            if (ordered) {
                pt.coef.beta_plus.row(eq) = r.beta_plus.transpose();
                pt.coef.beta_minus.row(eq) = r.beta_minus.transpose();
                warm.head(d) = r.beta_plus;
                warm.tail(d) = r.beta_minus;
            } else {
                warm = r.beta;
            }
            pt.stats.loss += r.loss;
        }
    }
    finalize_stats(path, design, zero_tol);
    return path;
}

LambdaPath fit_path(const LagDesign& design, PenaltyKind kind, const LambdaGrid& grid,
                    const SolverConfig& config, double zero_tol) {
    return fit_path(design, make_design_gram(design), kind, grid, config, zero_tol);
}

int max_ls_order(Eigen::Index window_rows, Eigen::Index q_eff, int h, int p_cap) {
    // the estimability rule compares parameters per equation with the window length
    int best = 0;
    for (int m = 1; m <= p_cap; ++m) {
        if (q_eff * m >= window_rows) break;
        if (window_rows - m - h + 1 < 1) break;
        best = m;
    }
    return best;
}

LambdaPath fit_ols_by_order(const Eigen::MatrixXd& centered, int p_ls, int h, int p_pad,
                            int subset) {
    if (p_ls < 1) throw std::invalid_argument("fit_ols_by_order: need p_ls >= 1");
    if (p_pad < p_ls) throw std::invalid_argument("fit_ols_by_order: p_pad < p_ls");

    LambdaPath path;
    path.estimator = Estimator::OLS;
    path.points.reserve(static_cast<std::size_t>(p_ls));
    for (int m = 1; m <= p_ls; ++m) {
        LagDesign d = build_design(centered, m, h, subset);
        if (!d.X.allFinite() || !d.Y.allFinite())
            throw std::runtime_error("fit_ols_by_order: non-finite values at order " +
                                     std::to_string(m));
        // minimum-norm least squares; rank-deficient orders solve deterministically
        // and are invalidated below when they interpolate
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(d.X);
        Eigen::MatrixXd beta = cod.solve(d.Y);  // (q_eff*m) x q_eq
        const Eigen::MatrixXd resid = d.Y - d.X * beta;

        PathPoint pt;
        pt.param = static_cast<double>(m);
        pt.coef.q_equations = d.Y.cols();
        pt.coef.q_series = d.q_effective;
        pt.coef.p = p_pad;
        pt.coef.estimator = Estimator::OLS;
        pt.coef.beta = Eigen::MatrixXd::Zero(d.Y.cols(), d.q_effective * p_pad);
        for (Eigen::Index i = 0; i < d.Y.cols(); ++i)
            for (Eigen::Index j = 0; j < d.q_effective; ++j)
                for (Eigen::Index l = 0; l < m; ++l)
                    pt.coef.beta(i, j * p_pad + l) = beta(j * m + l, i);

        pt.stats.loss = 0.5 * resid.squaredNorm();
        pt.stats.df = static_cast<long>(d.q_effective) * d.q_effective * m;
        pt.stats.n = d.n;
        const double floor = 1e-12 * 0.5 * d.Y.squaredNorm();
        pt.stats.valid = pt.stats.loss > floor && pt.stats.loss > 0.0 && pt.stats.n >= 2;
        pt.stats.bic = pt.stats.valid ? bic(pt.stats.loss, pt.stats.df, pt.stats.n) : 0.0;
        path.points.push_back(std::move(pt));
    }
    return path;
}

PathSummary summarize_path(const LambdaPath& path, WeightScheme scheme, double zero_tol) {
    PathSummary s;
    s.stats.reserve(path.points.size());
    std::vector<Eigen::MatrixXd> lengths;
    lengths.reserve(path.points.size());
    for (const auto& pt : path.points) {
        s.stats.push_back(pt.stats);
        lengths.push_back(lag_lengths(pt.coef, zero_tol));
    }
    s.weights = combination_weights(s.stats, scheme);
    s.weighted_lag_lengths = combined_lag_lengths(lengths, s.weights);
    s.bic_argmin = select_by_bic(s.stats);
    return s;
}

}  // namespace lassovar
