#include <random>

#include "doctest.h"
#include "lassovar/design.hpp"
#include "lassovar/solver.hpp"

using namespace lassovar;

namespace {

struct Instance {
    Eigen::MatrixXd gram;
    Eigen::VectorXd xty;
    double yty = 0.0;
    double lipschitz = 0.0;
    GroupLayout layout;
};

Instance random_instance(unsigned seed, int q, int p, int n) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    const int d = q * p;
    Eigen::MatrixXd X(n, d);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < d; ++j) X(r, j) = g(rng);
    Eigen::VectorXd y(n);
    for (int r = 0; r < n; ++r) y(r) = g(rng);
    Instance inst;
    inst.gram = X.transpose() * X;
    inst.xty = X.transpose() * y;
    inst.yty = y.squaredNorm();
    inst.lipschitz = power_iteration_top_eigenvalue(inst.gram, 200, 1e-12);
    inst.layout = GroupLayout{q, p};
    return inst;
}

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("power iteration finds the top eigenvalue") {
        Eigen::MatrixXd sym = Eigen::Vector3d(1.0, 7.0, 2.0).asDiagonal();
        CHECK(power_iteration_top_eigenvalue(sym) == doctest::Approx(7.0));
        CHECK(power_iteration_top_eigenvalue(Eigen::MatrixXd::Zero(2, 2)) ==
              doctest::Approx(0.0));
    }

    TEST_CASE("orthonormal design, no penalty: least squares") {
        std::mt19937_64 rng(1);
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::VectorXd y(4);
        for (int i = 0; i < 4; ++i) y(i) = g(rng);
        const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
        const SolveResult r = solve_gram(X, X.transpose() * y, y.squaredNorm(), 1.0, 0.0,
                                         PenaltyKind::Lasso, GroupLayout{1, 4}, SolverConfig{});
        CHECK((r.beta - y).lpNorm<Eigen::Infinity>() < 1e-9);
        CHECK(r.converged);
    }

    TEST_CASE("orthonormal design: lasso solution is the soft threshold") {
        Eigen::VectorXd y(4);
        y << 1.5, -0.2, 0.7, -2.0;
        const double lam = 0.6;
        const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
        const SolveResult r = solve_gram(X, y, y.squaredNorm(), 1.0, lam, PenaltyKind::Lasso,
                                         GroupLayout{1, 4}, SolverConfig{});
        for (int i = 0; i < 4; ++i) {
            const double expect = std::copysign(std::max(0.0, std::abs(y(i)) - lam), y(i));
            CHECK(r.beta(i) == doctest::Approx(expect).epsilon(1e-9));
        }
    }

    TEST_CASE("lambda at or above lambda_max yields the zero solution") {
        for (PenaltyKind kind :
             {PenaltyKind::Lasso, PenaltyKind::Hierarchical, PenaltyKind::Ordered}) {
            const Instance inst = random_instance(7, 2, 3, 30);
            const double lam = lambda_max_from_xty(kind, inst.xty, inst.layout);
            for (double scale : {1.0, 2.5}) {
                const SolveResult r = solve_gram(inst.gram, inst.xty, inst.yty, inst.lipschitz,
                                                 lam * scale, kind, inst.layout, SolverConfig{});
                CHECK(r.beta.cwiseAbs().maxCoeff() == 0.0);
                CHECK(r.loss == doctest::Approx(0.5 * inst.yty));
            }
        }
    }

    TEST_CASE("warm starts land on the cold-start solution") {
        SolverConfig tight;
        tight.max_iterations = 100000;
        tight.tolerance = 1e-10;
        tight.objective_tolerance = 1e-14;
        for (PenaltyKind kind :
             {PenaltyKind::Lasso, PenaltyKind::Hierarchical, PenaltyKind::Ordered}) {
            const Instance inst = random_instance(11, 2, 4, 40);
            const double lam =
                0.2 * lambda_max_from_xty(kind, inst.xty, inst.layout);
            const SolveResult cold = solve_gram(inst.gram, inst.xty, inst.yty, inst.lipschitz,
                                                lam, kind, inst.layout, tight);
            // the solver's warm state is beta, or the stacked pair for the split penalty
            Eigen::VectorXd state = cold.beta;
            if (kind == PenaltyKind::Ordered) {
                state.resize(cold.beta_plus.size() + cold.beta_minus.size());
                state << cold.beta_plus, cold.beta_minus;
            }
            const SolveResult warm = solve_gram(inst.gram, inst.xty, inst.yty, inst.lipschitz,
                                                lam, kind, inst.layout, tight, &state);
            // agreement at the solver's own accuracy scale, not exact bitwise identity
            CHECK((warm.beta - cold.beta).lpNorm<Eigen::Infinity>() < 1e-6);
            CHECK(warm.iterations <= cold.iterations);
        }
    }

    TEST_CASE("solutions scale linearly with the data and penalty") {
        const Instance inst = random_instance(13, 1, 5, 25);
        const double lam = 0.15 * lambda_max_from_xty(PenaltyKind::Lasso, inst.xty, inst.layout);
        SolverConfig tight;
        tight.tolerance = 1e-10;
        tight.max_iterations = 100000;
        const SolveResult base = solve_gram(inst.gram, inst.xty, inst.yty, inst.lipschitz, lam,
                                            PenaltyKind::Lasso, inst.layout, tight);
        const double c = 3.0;
        const SolveResult scaled =
            solve_gram(inst.gram, c * inst.xty, c * c * inst.yty, inst.lipschitz, c * lam,
                       PenaltyKind::Lasso, inst.layout, tight);
        CHECK((scaled.beta - c * base.beta).lpNorm<Eigen::Infinity>() < 1e-7);
    }

    TEST_CASE("system solve is the stacked per-equation solve") {
        std::mt19937_64 rng(19);
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::MatrixXd m(30, 2);
        for (int r = 0; r < 30; ++r)
            for (int j = 0; j < 2; ++j) m(r, j) = g(rng);
        const LagDesign design = build_design(m, 2, 1);
        const double lam = 0.5;
        const CoefTensor coef = solve_system(design, lam, PenaltyKind::Lasso, SolverConfig{});
        REQUIRE(coef.q_equations == 2);
        for (Eigen::Index eq = 0; eq < 2; ++eq) {
            const SolveResult r = solve_equation(design, eq, lam, PenaltyKind::Lasso,
                                                 SolverConfig{});
            CHECK((coef.beta.row(eq).transpose() - r.beta).lpNorm<Eigen::Infinity>() == 0.0);
        }
    }

    TEST_CASE("duplicate target columns produce duplicate coefficient rows") {
        std::mt19937_64 rng(29);
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::MatrixXd m(25, 2);
        for (int r = 0; r < 25; ++r) {
            m(r, 0) = g(rng);
            m(r, 1) = m(r, 0);  // identical series
        }
        const LagDesign design = build_design(m, 2, 1);
        const CoefTensor coef = solve_system(design, 0.3, PenaltyKind::Lasso, SolverConfig{});
        CHECK((coef.beta.row(0) - coef.beta.row(1)).lpNorm<Eigen::Infinity>() == 0.0);
    }

    TEST_CASE("objective decomposes as loss plus weighted penalty") {
        const Instance inst = random_instance(31, 2, 3, 35);
        const double lam = 0.3 * lambda_max_from_xty(PenaltyKind::Ordered, inst.xty, inst.layout);
        const SolveResult r = solve_gram(inst.gram, inst.xty, inst.yty, inst.lipschitz, lam,
                                         PenaltyKind::Ordered, inst.layout, SolverConfig{});
        // split-space mass, not the minimal-split value of beta, prices the iterate
        const double mass = r.beta_plus.sum() + r.beta_minus.sum();
        CHECK(r.objective == doctest::Approx(r.loss + lam * mass));
        CHECK(r.converged);
        CHECK(r.iterations <= SolverConfig{}.max_iterations);
    }
}
