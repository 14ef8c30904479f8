#include "lassovar/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lassovar {

void pava_nonincreasing(Eigen::Ref<Eigen::VectorXd> v) {
    const Eigen::Index n = v.size();
    if (n <= 1) return;
    // blocks of pooled entries: running (mean, count), merged while increasing
    std::vector<double> mean(static_cast<std::size_t>(n));
    std::vector<Eigen::Index> count(static_cast<std::size_t>(n));
    std::size_t top = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        mean[top] = v(i);
        count[top] = 1;
        ++top;
        while (top > 1 && mean[top - 2] < mean[top - 1]) {
            const double total = mean[top - 2] * static_cast<double>(count[top - 2]) +
                                 mean[top - 1] * static_cast<double>(count[top - 1]);
            count[top - 2] += count[top - 1];
            mean[top - 2] = total / static_cast<double>(count[top - 2]);
            --top;
        }
    }
    Eigen::Index pos = 0;
    for (std::size_t b = 0; b < top; ++b)
        for (Eigen::Index k = 0; k < count[b]; ++k) v(pos++) = mean[b];
}

namespace {

void check_layout(const Eigen::VectorXd& beta, const GroupLayout& layout) {
    if (layout.q_effective < 1 || layout.p < 1 || beta.size() != layout.size())
        throw std::invalid_argument("prox: vector length does not match layout");
}

// projection onto {non-increasing, >= 0}: clip after pooling is exact
void project_cone(Eigen::Ref<Eigen::VectorXd> v) {
    pava_nonincreasing(v);
    v = v.cwiseMax(0.0);
}

}  // namespace

double penalty_value(PenaltyKind kind, const Eigen::VectorXd& beta, const GroupLayout& layout) {
    check_layout(beta, layout);
    const Eigen::Index p = layout.p;
    switch (kind) {
        case PenaltyKind::Lasso:
            return beta.lpNorm<1>();
        case PenaltyKind::Hierarchical: {
            double sum = 0.0;
            for (Eigen::Index j = 0; j < layout.q_effective; ++j) {
                double ssq = 0.0;
                for (Eigen::Index l = p - 1; l >= 0; --l) {
                    const double b = beta(j * p + l);
                    ssq += b * b;
                    sum += std::sqrt(ssq);
                }
            }
            return sum;
        }
        case PenaltyKind::Ordered: {
            const OrderedProx split = minimal_split(beta, layout);
            return split.beta_plus.sum() + split.beta_minus.sum();
        }
    }
    throw std::invalid_argument("penalty_value: unknown kind");
}

Eigen::VectorXd prox_lasso(const Eigen::VectorXd& z, double t) {
    if (t < 0) throw std::invalid_argument("prox_lasso: t must be >= 0");
    return z.unaryExpr([t](double v) {
        const double m = std::abs(v) - t;
        return m > 0 ? (v > 0 ? m : -m) : 0.0;
    });
}

Eigen::VectorXd prox_hierarchical(const Eigen::VectorXd& z, double t, const GroupLayout& layout) {
    if (t < 0) throw std::invalid_argument("prox_hierarchical: t must be >= 0");
    check_layout(z, layout);
    Eigen::VectorXd out = z;
    const Eigen::Index p = layout.p;
    // nested groups: shrink suffixes innermost-first; each step is a group
    // soft-threshold, and the composition is the exact prox for nested groups
    for (Eigen::Index j = 0; j < layout.q_effective; ++j) {
        auto block = out.segment(j * p, p);
        for (Eigen::Index l = p - 1; l >= 0; --l) {
            auto suffix = block.segment(l, p - l);
            const double norm = suffix.norm();
            suffix *= (norm > t) ? (1.0 - t / norm) : 0.0;
        }
    }
    return out;
}

OrderedProx prox_ordered(const Eigen::VectorXd& z, double t, const GroupLayout& layout) {
    if (t < 0) throw std::invalid_argument("prox_ordered: t must be >= 0");
    check_layout(z, layout);
    OrderedProx r;
    r.beta_plus = z.array() - t;
    r.beta_minus = -z.array() - t;
    const Eigen::Index p = layout.p;
    for (Eigen::Index j = 0; j < layout.q_effective; ++j) {
        project_cone(r.beta_plus.segment(j * p, p));
        project_cone(r.beta_minus.segment(j * p, p));
    }
    r.beta = r.beta_plus - r.beta_minus;
    return r;
}

OrderedProx minimal_split(const Eigen::VectorXd& beta, const GroupLayout& layout) {
    check_layout(beta, layout);
    OrderedProx r;
    r.beta = beta;
    r.beta_minus.resize(beta.size());
    const Eigen::Index p = layout.p;
    // backward recursion: each entry is the smallest value satisfying nonnegativity
    // of beta_plus, monotonicity of beta_minus, and monotonicity of beta_plus
    for (Eigen::Index j = 0; j < layout.q_effective; ++j) {
        auto b = beta.segment(j * p, p);
        auto bm = r.beta_minus.segment(j * p, p);
        bm(p - 1) = std::max(0.0, -b(p - 1));
        for (Eigen::Index l = p - 2; l >= 0; --l)
            bm(l) = std::max({bm(l + 1), -b(l), bm(l + 1) + b(l + 1) - b(l)});
    }
    r.beta_plus = beta + r.beta_minus;
    return r;
}

double lambda_max_from_xty(PenaltyKind kind, const Eigen::MatrixXd& xty,
                           const GroupLayout& layout) {
    if (xty.rows() != layout.size())
        throw std::invalid_argument("lambda_max: X'Y rows do not match layout");
    double best = 0.0;
    if (kind == PenaltyKind::Hierarchical) {
        for (Eigen::Index eq = 0; eq < xty.cols(); ++eq)
            for (Eigen::Index j = 0; j < layout.q_effective; ++j)
                best = std::max(best, xty.col(eq).segment(j * layout.p, layout.p).norm());
    } else {
        best = xty.cwiseAbs().maxCoeff();
    }
    if (best <= 0.0) throw std::runtime_error("lambda_max: degenerate design (X'Y is zero)");
    return best;
}

double lambda_max(PenaltyKind kind, const LagDesign& design) {
    const GroupLayout layout{design.q_effective, design.p};
    return lambda_max_from_xty(kind, design.X.transpose() * design.Y, layout);
}

}  // namespace lassovar
