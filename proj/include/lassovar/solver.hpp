#pragma once

#include <Eigen/Dense>
#include <optional>

#include "lassovar/coef.hpp"
#include "lassovar/design.hpp"
#include "lassovar/prox.hpp"

namespace lassovar {

struct SolverConfig {
    int max_iterations = 10000;
    // Stop when ||beta_new - beta_old||_inf <= tolerance * max(1, ||beta_new||_inf)
    double tolerance = 1e-7;
    // ... or when |F_new - F_old| <= objective_tolerance * max(1, |F_new|), on accepted steps.
    double objective_tolerance = 1e-10;
};

struct SolveResult {
    Eigen::VectorXd beta;
    Eigen::VectorXd beta_plus;   // ordered penalty only, else empty
    Eigen::VectorXd beta_minus;  // ordered penalty only, else empty
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;  // 0.5 ||y - X beta||^2 + lambda * penalty
    double loss = 0.0;       // 0.5 ||y - X beta||^2
};

/// One equation's least-squares data in Gram form, shared across lambdas and penalties.
/// Objective: 0.5 beta'G beta - beta'xty + 0.5 yty + lambda * penalty(beta).
struct GramProblem {
    Eigen::MatrixXd gram;  // X'X
    Eigen::VectorXd xty;   // X'y
    double yty = 0.0;      // y'y
    double lipschitz = 0.0;  // top eigenvalue of X'X (gradient Lipschitz constant)
};

/// Largest eigenvalue of a symmetric PSD matrix by power iteration
/// (50 iterations, tol 1e-9, deterministic start).
double power_iteration_top_eigenvalue(const Eigen::MatrixXd& sym, int iterations = 50,
                                      double tol = 1e-9);

/// Assembles the Gram-form problem for one target column of the design.
/// Throws std::runtime_error on non-finite design entries.
GramProblem make_gram_problem(const LagDesign& design, Eigen::Index equation);

/// Accelerated proximal gradient (FISTA) with an objective-increase restart guard:
/// a step that would raise the objective is rejected, momentum resets, and the plain
/// proximal step is retried (doubling the step Lipschitz bound if even that fails).
/// Accepted objectives are therefore non-increasing. Fixed step 1/L from the Gram
/// Lipschitz bound (2L for the ordered penalty, whose iterate is the stacked
/// [beta_plus; beta_minus] pair and whose prox is per-part PAVA).
/// `warm` seeds the iterate with a state vector of matching dimension
/// (beta, or the stacked pair for ordered); zero start otherwise.
SolveResult solve_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty, double yty,
                       double lipschitz, double lambda, PenaltyKind kind,
                       const GroupLayout& layout, const SolverConfig& config,
                       const Eigen::VectorXd* warm = nullptr);

inline SolveResult solve_gram(const GramProblem& problem, double lambda, PenaltyKind kind,
                              const GroupLayout& layout, const SolverConfig& config,
                              const Eigen::VectorXd* warm = nullptr) {
    return solve_gram(problem.gram, problem.xty, problem.yty, problem.lipschitz, lambda, kind,
                      layout, config, warm);
}

/// Convenience wrapper: one equation of a design at one lambda, zero start.
SolveResult solve_equation(const LagDesign& design, Eigen::Index equation, double lambda,
                           PenaltyKind kind, const SolverConfig& config);

/// All equations of the design at one lambda; rows of the result are equations.
CoefTensor solve_system(const LagDesign& design, double lambda, PenaltyKind kind,
                        const SolverConfig& config);

}  // namespace lassovar
