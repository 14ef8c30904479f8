#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lassovar/combine.hpp"

using namespace lassovar;

namespace {

FitStats stats_with(double bic_value, bool valid = true, double loss = 1.0, Eigen::Index n = 50) {
    FitStats s;
    s.loss = loss;
    s.bic = bic_value;
    s.n = n;
    s.valid = valid;
    return s;
}

}  // namespace

TEST_SUITE("combine") {
    TEST_CASE("overdetermined grids end at exactly zero") {
        const LambdaGrid g = build_grid_values(8.0, 10, 50, 5);
        REQUIRE(g.L() == 5);
        CHECK(g.values.front() == 8.0);
        CHECK(g.values.back() == 0.0);
        for (std::size_t k = 1; k < g.values.size(); ++k)
            CHECK(g.values[k] < g.values[k - 1]);  // strictly decreasing

        const LambdaGrid two = build_grid_values(8.0, 10, 50, 2);
        REQUIRE(two.L() == 2);
        CHECK(two.values[0] == 8.0);
        CHECK(two.values[1] == 0.0);
    }

    TEST_CASE("underdetermined grids floor at a tenth of lambda_max") {
        // 360 parameters against 98 rows: no unpenalized fit on the grid
        const LambdaGrid g = build_grid_values(8.0, 360, 98, 4);
        REQUIRE(g.L() == 4);
        CHECK(g.values.front() == 8.0);
        CHECK(g.values.back() == doctest::Approx(0.8));
        for (double v : g.values) CHECK(v > 0.0);
    }

    TEST_CASE("grid preconditions") {
        CHECK_THROWS_AS(build_grid_values(8.0, 10, 50, 1), std::invalid_argument);
        CHECK_THROWS_AS(build_grid_values(0.0, 10, 50, 5), std::invalid_argument);
        CHECK_THROWS_AS(build_grid_values(8.0, 10, 50, 5, 1.5), std::invalid_argument);
    }

    TEST_CASE("equal criteria share the weight") {
        const std::vector<FitStats> stats = {stats_with(10.0), stats_with(10.0)};
        const Eigen::VectorXd w = combination_weights(stats, WeightScheme::BIC);
        CHECK(w(0) == doctest::Approx(0.5));
        CHECK(w(1) == doctest::Approx(0.5));
    }

    TEST_CASE("a criterion gap of 2 ln 3 yields 3:1 odds") {
        const std::vector<FitStats> stats = {stats_with(0.0), stats_with(2.0 * std::log(3.0))};
        const Eigen::VectorXd w = combination_weights(stats, WeightScheme::BIC);
        CHECK(w(0) == doctest::Approx(0.75));
        CHECK(w(1) == doctest::Approx(0.25));
    }

    TEST_CASE("huge criterion gaps stay finite and one-sided") {
        const std::vector<FitStats> stats = {stats_with(-100.0), stats_with(100.0)};
        const Eigen::VectorXd w = combination_weights(stats, WeightScheme::BIC);
        CHECK(w.allFinite());
        CHECK(w(0) >= 1.0 - 1e-12);
        CHECK(w.sum() == doctest::Approx(1.0));
    }

    TEST_CASE("invalid fits get zero weight under every scheme") {
        const std::vector<FitStats> stats = {stats_with(5.0), stats_with(1.0, false),
                                             stats_with(7.0)};
        for (WeightScheme s : {WeightScheme::BIC, WeightScheme::Equal, WeightScheme::MSE}) {
            const Eigen::VectorXd w = combination_weights(stats, s);
            CHECK(w(1) == 0.0);
            CHECK(w.sum() == doctest::Approx(1.0));
        }
        const std::vector<FitStats> none = {stats_with(1.0, false)};
        CHECK_THROWS_AS(combination_weights(none, WeightScheme::BIC), std::runtime_error);
    }

    TEST_CASE("equal scheme is uniform, mse scheme follows inverse loss") {
        const std::vector<FitStats> stats = {stats_with(0.0, true, 2.0),
                                             stats_with(0.0, true, 1.0)};
        const Eigen::VectorXd eq = combination_weights(stats, WeightScheme::Equal);
        CHECK(eq(0) == doctest::Approx(0.5));
        const Eigen::VectorXd mse = combination_weights(stats, WeightScheme::MSE);
        CHECK(mse(1) == doctest::Approx(2.0 * mse(0)));  // half the loss, twice the weight
        CHECK(mse.sum() == doctest::Approx(1.0));
    }

    TEST_CASE("bic selection takes the sparser end of a tie") {
        const std::vector<FitStats> stats = {stats_with(3.0), stats_with(1.0), stats_with(1.0)};
        CHECK(select_by_bic(stats) == 1);  // earlier index = heavier penalty = sparser
        const std::vector<FitStats> skip = {stats_with(0.5, false), stats_with(1.0)};
        CHECK(select_by_bic(skip) == 1);
    }

    TEST_CASE("single-fit combination is the fit itself") {
        Eigen::MatrixXd individual(1, 2);
        individual << 1.5, -0.5;
        const ForecastSet fs = combine_forecasts(individual, Eigen::VectorXd::Ones(1),
                                                 WeightScheme::BIC);
        CHECK(fs.combined(0) == 1.5);
        CHECK(fs.combined(1) == -0.5);
    }

    TEST_CASE("averaging two forecasts") {
        Eigen::MatrixXd individual(2, 1);
        individual << 1.0, 3.0;
        Eigen::VectorXd w(2);
        w << 0.5, 0.5;
        const ForecastSet fs = combine_forecasts(individual, w, WeightScheme::Equal);
        CHECK(fs.combined(0) == doctest::Approx(2.0));
    }

    TEST_CASE("a non-finite forecast is an error naming the grid point") {
        Eigen::MatrixXd individual(2, 1);
        individual << 1.0, std::nan("");
        Eigen::VectorXd w(2);
        w << 0.5, 0.5;
        try {
            combine_forecasts(individual, w, WeightScheme::BIC);
            CHECK(false);
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("grid point 1") != std::string::npos);
        }
        Eigen::VectorXd short_w(1);
        short_w << 1.0;
        CHECK_THROWS_AS(combine_forecasts(individual, short_w, WeightScheme::BIC),
                        std::invalid_argument);
    }

    TEST_CASE("combined lag lengths average the per-fit matrices") {
        std::vector<Eigen::MatrixXd> per_fit = {Eigen::MatrixXd::Constant(1, 1, 2.0),
                                                Eigen::MatrixXd::Constant(1, 1, 4.0)};
        Eigen::VectorXd half(2);
        half << 0.5, 0.5;
        CHECK(combined_lag_lengths(per_fit, half)(0, 0) == doctest::Approx(3.0));
        Eigen::VectorXd onehot(2);
        onehot << 0.0, 1.0;
        CHECK(combined_lag_lengths(per_fit, onehot)(0, 0) == 4.0);
    }
}
