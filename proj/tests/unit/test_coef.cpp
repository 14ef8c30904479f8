#include <stdexcept>

#include "doctest.h"
#include "lassovar/coef.hpp"

using namespace lassovar;

TEST_SUITE("coef") {
    TEST_CASE("information criterion arithmetic") {
        CHECK(bic(1.0, 0, 50) == 0.0);  // log 1 = 0, no parameters
        // 100 ln 2.5 + 7 ln 100, checked against an independent calculator
        CHECK(bic(2.5, 7, 100) == doctest::Approx(123.86526448933216).epsilon(1e-12));
        CHECK(bic(2.5, 0, 100) < bic(2.5, 7, 100));  // df only adds
        CHECK_THROWS_AS(bic(0.0, 1, 10), std::invalid_argument);
        CHECK_THROWS_AS(bic(-1.0, 1, 10), std::invalid_argument);
        CHECK_THROWS_AS(bic(1.0, 1, 1), std::invalid_argument);
    }

    TEST_CASE("active lag length per equation and series") {
        CoefTensor coef;
        coef.q_equations = 1;
        coef.q_series = 1;
        coef.p = 4;
        coef.beta.resize(1, 4);
        coef.beta << 0.5, 0.0, 0.2, 0.0;
        const Eigen::MatrixXd len = lag_lengths(coef, 1e-8);
        REQUIRE(len.rows() == 1);
        CHECK(len(0, 0) == 3.0);  // largest active lag, gaps do not matter

        coef.beta.setZero();
        CHECK(lag_lengths(coef, 1e-8)(0, 0) == 0.0);
    }

    TEST_CASE("lag lengths split by source series block") {
        CoefTensor coef;
        coef.q_equations = 2;
        coef.q_series = 2;
        coef.p = 3;
        coef.beta = Eigen::MatrixXd::Zero(2, 6);
        coef.beta(0, 0) = 0.4;   // eq 0, series 0, lag 1
        coef.beta(0, 4) = 0.1;   // eq 0, series 1, lag 2
        coef.beta(1, 2) = -0.2;  // eq 1, series 0, lag 3
        const Eigen::MatrixXd len = lag_lengths(coef, 1e-8);
        CHECK(len(0, 0) == 1.0);
        CHECK(len(0, 1) == 2.0);
        CHECK(len(1, 0) == 3.0);
        CHECK(len(1, 1) == 0.0);
        // sub-tolerance entries do not count
        coef.beta(1, 5) = 1e-12;
        CHECK(lag_lengths(coef, 1e-8)(1, 1) == 0.0);
    }

    TEST_CASE("coefficient accessor uses 1-based lags") {
        CoefTensor coef;
        coef.q_equations = 1;
        coef.q_series = 2;
        coef.p = 2;
        coef.beta.resize(1, 4);
        coef.beta << 1.0, 2.0, 3.0, 4.0;
        CHECK(coef.coef(0, 0, 1) == 1.0);
        CHECK(coef.coef(0, 0, 2) == 2.0);
        CHECK(coef.coef(0, 1, 1) == 3.0);
        CHECK(coef.coef(0, 1, 2) == 4.0);
    }

    TEST_CASE("estimator names and penalties line up") {
        CHECK(std::string(estimator_name(Estimator::OLS)) == "ols");
        CHECK(std::string(estimator_name(Estimator::Lasso)) == "lasso");
        CHECK(std::string(estimator_name(Estimator::Hierarchical)) == "hierarchical");
        CHECK(std::string(estimator_name(Estimator::Ordered)) == "ordered");
        CHECK(to_penalty(Estimator::Lasso) == PenaltyKind::Lasso);
        CHECK(to_penalty(Estimator::Hierarchical) == PenaltyKind::Hierarchical);
        CHECK(to_penalty(Estimator::Ordered) == PenaltyKind::Ordered);
    }
}
