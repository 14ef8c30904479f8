#include "lassovar/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lassovar {

double power_iteration_top_eigenvalue(const Eigen::MatrixXd& sym, int iterations, double tol) {
    const Eigen::Index n = sym.rows();
    if (n == 0) return 0.0;
    Eigen::VectorXd v(n);
    // deterministic start with a ramp so it is not orthogonal to the top eigenvector
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = 1.0 + 0.5 * static_cast<double>(i) / static_cast<double>(n);
    v.normalize();
    double eig = 0.0;
    for (int k = 0; k < iterations; ++k) {
        Eigen::VectorXd w = sym.selfadjointView<Eigen::Lower>() * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        const double next = v.dot(w);
        v = w / norm;
        if (k > 0 && std::abs(next - eig) <= tol * std::max(1.0, std::abs(next))) {
            eig = next;
            break;
        }
        eig = next;
    }
    return eig;
}

GramProblem make_gram_problem(const LagDesign& design, Eigen::Index equation) {
    if (equation < 0 || equation >= design.Y.cols())
        throw std::invalid_argument("make_gram_problem: equation index out of range");
    if (!design.X.allFinite() || !design.Y.allFinite())
        throw std::runtime_error("make_gram_problem: non-finite values in design");
    GramProblem p;
    p.gram = design.X.transpose() * design.X;
    p.xty = design.X.transpose() * design.Y.col(equation);
    p.yty = design.Y.col(equation).squaredNorm();
    p.lipschitz = power_iteration_top_eigenvalue(p.gram);
    return p;
}

namespace {

// State layout: beta itself for lasso/hierarchical; [beta_plus; beta_minus] for ordered.
struct Kernel {
    PenaltyKind kind;
    GroupLayout layout;
    Eigen::Index d;  // coefficient dimension

    Eigen::Index state_dim() const { return kind == PenaltyKind::Ordered ? 2 * d : d; }

    Eigen::VectorXd extract_beta(const Eigen::VectorXd& state) const {
        if (kind == PenaltyKind::Ordered) return state.head(d) - state.tail(d);
        return state;
    }

    double penalty(const Eigen::VectorXd& state) const {
        switch (kind) {
            case PenaltyKind::Lasso: return state.lpNorm<1>();
            case PenaltyKind::Hierarchical:
                return penalty_value(PenaltyKind::Hierarchical, state, layout);
            case PenaltyKind::Ordered: return state.sum();  // both halves are nonnegative
        }
        return 0.0;
    }

    Eigen::VectorXd prox(const Eigen::VectorXd& z, double t) const {
        switch (kind) {
            case PenaltyKind::Lasso: return prox_lasso(z, t);
            case PenaltyKind::Hierarchical: return prox_hierarchical(z, t, layout);
            case PenaltyKind::Ordered: {
                Eigen::VectorXd out(2 * d);
                out.head(d) = z.head(d).array() - t;
                out.tail(d) = z.tail(d).array() - t;
                for (Eigen::Index j = 0; j < layout.q_effective; ++j) {
                    auto clip_block = [&](Eigen::Index offset) {
                        auto seg = out.segment(offset + j * layout.p, layout.p);
                        pava_nonincreasing(seg);
                        seg = seg.cwiseMax(0.0);
                    };
                    clip_block(0);
                    clip_block(d);
                }
                return out;
            }
        }
        return z;
    }

    // gradient of the smooth part in state coordinates, from the beta-space gradient
    Eigen::VectorXd lift_gradient(const Eigen::VectorXd& g) const {
        if (kind != PenaltyKind::Ordered) return g;
        Eigen::VectorXd out(2 * d);
        out.head(d) = g;
        out.tail(d) = -g;
        return out;
    }
};

}  // namespace

SolveResult solve_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty, double yty,
                       double lipschitz, double lambda, PenaltyKind kind,
                       const GroupLayout& layout, const SolverConfig& config,
                       const Eigen::VectorXd* warm) {
    if (lambda < 0) throw std::invalid_argument("solve_gram: lambda must be >= 0");
    if (config.max_iterations < 1 || !(config.tolerance > 0))
        throw std::invalid_argument("solve_gram: invalid config");
    const Eigen::Index d = xty.size();
    if (gram.rows() != d || gram.cols() != d)
        throw std::invalid_argument("solve_gram: gram/xty size mismatch");
    if (layout.size() != d) throw std::invalid_argument("solve_gram: layout size mismatch");

    const Kernel kernel{kind, layout, d};
    const Eigen::Index D = kernel.state_dim();

    Eigen::VectorXd x;
    if (warm) {
        if (warm->size() != D) throw std::invalid_argument("solve_gram: warm start size mismatch");
        x = *warm;
    } else {
        x = Eigen::VectorXd::Zero(D);
    }

    // smooth-part Lipschitz bound in state coordinates; the guard below doubles it
    // if the power-iteration estimate proves too small
    double lip = std::max(lipschitz, 0.0) * (kind == PenaltyKind::Ordered ? 2.0 : 1.0);
    if (!(lip > 0)) lip = 1.0;

    const auto loss_of = [&](const Eigen::VectorXd& beta, const Eigen::VectorXd& gbeta) {
        return 0.5 * (yty - 2.0 * beta.dot(xty) + beta.dot(gbeta));
    };

    Eigen::VectorXd beta_x = kernel.extract_beta(x);
    Eigen::VectorXd gb_x = gram.selfadjointView<Eigen::Lower>() * beta_x;
    double loss_x = loss_of(beta_x, gb_x);
    double F_x = loss_x + lambda * kernel.penalty(x);

    Eigen::VectorXd x_prev = x, beta_prev = beta_x, gb_prev = gb_x;
    double t_mom = 1.0;
    bool plain_step = true;  // whether the next step uses zero momentum

    SolveResult result;
    result.converged = false;
    int iter = 0;
    for (; iter < config.max_iterations; ++iter) {
        double gamma = 0.0;
        if (!plain_step) {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
            gamma = (t_mom - 1.0) / t_next;
            t_mom = t_next;
        } else {
            t_mom = 1.0;
        }

        // momentum point and its gradient come from cached Gram products
        Eigen::VectorXd beta_v = beta_x + gamma * (beta_x - beta_prev);
        Eigen::VectorXd gb_v = gb_x + gamma * (gb_x - gb_prev);
        Eigen::VectorXd v = x + gamma * (x - x_prev);
        Eigen::VectorXd grad_v = kernel.lift_gradient(gb_v - xty);

        Eigen::VectorXd z = kernel.prox(v - grad_v / lip, lambda / lip);
        Eigen::VectorXd beta_z = kernel.extract_beta(z);
        Eigen::VectorXd gb_z = gram.selfadjointView<Eigen::Lower>() * beta_z;
        const double loss_z = loss_of(beta_z, gb_z);
        const double F_z = loss_z + lambda * kernel.penalty(z);

        if (F_z > F_x) {
            if (plain_step) {
                // even the unaccelerated step increased the objective: either the
                // Lipschitz estimate is low, or we are at the numerical floor
                if (F_z - F_x <= 1e-12 * std::max(1.0, std::abs(F_x))) {
                    result.converged = true;
                    ++iter;
                    break;
                }
                lip *= 2.0;
            } else {
                plain_step = true;  // momentum restart
            }
            continue;
        }

        const double state_change = (z - x).lpNorm<Eigen::Infinity>();
        const double obj_change = F_x - F_z;

        x_prev = x;
        beta_prev = beta_x;
        gb_prev = gb_x;
        x = std::move(z);
        beta_x = std::move(beta_z);
        gb_x = std::move(gb_z);
        loss_x = loss_z;
        F_x = F_z;
        plain_step = false;

        if (state_change <= config.tolerance * std::max(1.0, x.lpNorm<Eigen::Infinity>()) ||
            obj_change <= config.objective_tolerance * std::max(1.0, std::abs(F_x))) {
            result.converged = true;
            ++iter;
            break;
        }
    }

    result.beta = kernel.extract_beta(x);
    if (kind == PenaltyKind::Ordered) {
        result.beta_plus = x.head(d);
        result.beta_minus = x.tail(d);
    }
    result.iterations = iter;
    result.objective = F_x;
    result.loss = loss_x;
    return result;
}

SolveResult solve_equation(const LagDesign& design, Eigen::Index equation, double lambda,
                           PenaltyKind kind, const SolverConfig& config) {
    const GramProblem p = make_gram_problem(design, equation);
    const GroupLayout layout{design.q_effective, design.p};
    return solve_gram(p, lambda, kind, layout, config);
}

CoefTensor solve_system(const LagDesign& design, double lambda, PenaltyKind kind,
                        const SolverConfig& config) {
    const Eigen::Index q_eq = design.Y.cols();
    CoefTensor out;
    out.q_equations = q_eq;
    out.q_series = design.q_effective;
    out.p = design.p;
    out.estimator = kind == PenaltyKind::Lasso       ? Estimator::Lasso
                    : kind == PenaltyKind::Hierarchical ? Estimator::Hierarchical
                                                        : Estimator::Ordered;
    out.beta.resize(q_eq, design.X.cols());
    if (kind == PenaltyKind::Ordered) {
        out.beta_plus.resize(q_eq, design.X.cols());
        out.beta_minus.resize(q_eq, design.X.cols());
    }
    for (Eigen::Index eq = 0; eq < q_eq; ++eq) {
        SolveResult r = solve_equation(design, eq, lambda, kind, config);
        out.beta.row(eq) = r.beta.transpose();
        if (kind == PenaltyKind::Ordered) {
            out.beta_plus.row(eq) = r.beta_plus.transpose();
            out.beta_minus.row(eq) = r.beta_minus.transpose();
        }
    }
    return out;
}

}  // namespace lassovar
