#pragma once

#include <Eigen/Dense>

#include "lassovar/design.hpp"

namespace lassovar {

enum class PenaltyKind { Lasso, Hierarchical, Ordered };

/// Shape of one equation's coefficient vector: q_effective blocks of p lags each,
/// block j occupying entries [j*p, (j+1)*p).
struct GroupLayout {
    Eigen::Index q_effective = 1;
    Eigen::Index p = 1;
    Eigen::Index size() const { return q_effective * p; }
};

/// In-place isotonic regression: least-squares fit of a non-increasing sequence
/// (pool-adjacent-violators, O(n)).
void pava_nonincreasing(Eigen::Ref<Eigen::VectorXd> v);

/// Penalty term of one equation (without the lambda factor).
///  Lasso:        sum |beta|
///  Hierarchical: per block, sum over l of ||beta[l..p]||_2 (nested suffix groups)
///  Ordered:      per block, the minimal feasible split value: min sum(b+ + b-)
///                over b+ - b- = beta with both parts non-increasing and >= 0.
double penalty_value(PenaltyKind kind, const Eigen::VectorXd& beta, const GroupLayout& layout);

/// Soft threshold, the lasso prox at level t >= 0.
Eigen::VectorXd prox_lasso(const Eigen::VectorXd& z, double t);

/// Exact prox of the nested suffix-group penalty: one backward pass per block,
/// scaling each suffix by max(0, 1 - t/||.||) from the innermost group outward.
Eigen::VectorXd prox_hierarchical(const Eigen::VectorXd& z, double t, const GroupLayout& layout);

struct OrderedProx {
    Eigen::VectorXd beta;        // beta_plus - beta_minus
    Eigen::VectorXd beta_plus;   // non-increasing, >= 0 within each block
    Eigen::VectorXd beta_minus;  // non-increasing, >= 0 within each block
};

/// Prox step of the split-form ordered penalty taken at the symmetric state (z, -z):
/// per block, beta_plus minimizes 0.5||b - (z - t)||^2 and beta_minus minimizes
/// 0.5||b - (-z - t)||^2 over the nonnegative non-increasing cone (PAVA, clipping
/// after pooling is the exact cone projection). Equivalently the exact minimizer of
/// 0.5||b+ - z||^2 + 0.5||b- + z||^2 + t*sum(b+ + b-) over the two cones. The solver
/// iterates this prox on the evolving pair; t = 0 returns z itself whenever the
/// positive and negative parts of z are separately feasible.
OrderedProx prox_ordered(const Eigen::VectorXd& z, double t, const GroupLayout& layout);

/// Pointwise-minimal feasible split of beta: the (beta_plus, beta_minus) pair with
/// smallest sum among all feasible splits (backward recursion per block). Used to
/// seed warm starts in split space and to evaluate the ordered penalty.
OrderedProx minimal_split(const Eigen::VectorXd& beta, const GroupLayout& layout);

/// Smallest level at which the zero vector is a fixed point of every equation's prox
/// step (exact for lasso; a valid upper bound for hierarchical and ordered).
/// Throws std::runtime_error on a degenerate design (X'Y == 0).
double lambda_max(PenaltyKind kind, const LagDesign& design);

/// Same bound computed from the cross-moment matrix X'Y directly.
double lambda_max_from_xty(PenaltyKind kind, const Eigen::MatrixXd& xty, const GroupLayout& layout);

}  // namespace lassovar
