#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lassovar/panel.hpp"

using namespace lassovar;

namespace {

std::string write_temp_csv(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    out.close();
    return path.string();
}

bool throws_containing(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const std::exception& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_SUITE("panel") {
    TEST_CASE("date parsing and formatting round-trip") {
        const Date m = parse_date("2003-07");
        CHECK(m.year == 2003);
        CHECK(m.month == 7);
        CHECK(m.day == 0);
        CHECK(format_date(m) == "2003-07");

        const Date d = parse_date("2003-07-15");
        CHECK(d.day == 15);
        CHECK(format_date(d) == "2003-07-15");

        CHECK(parse_date("2003-06") < parse_date("2003-07"));
        CHECK(parse_date("2003-07-01") < parse_date("2003-07-02"));
        CHECK_THROWS_AS(parse_date("garbage"), std::runtime_error);
        CHECK_THROWS_AS(parse_date("2003-13"), std::runtime_error);
    }

    TEST_CASE("three-row csv ingests as-is") {
        const auto path = write_temp_csv("lv_ingest_id.csv",
                                         "date,x\n2001-01,1.0\n2001-02,2.0\n2001-03,3.0\n");
        const RawPanel p = ingest_csv(path);
        CHECK(p.T() == 3);
        CHECK(p.q() == 1);
        CHECK(p.frequency == Frequency::Monthly);
        CHECK(p.names == std::vector<std::string>{"x"});
        CHECK(p.rows_dropped == 0);
        CHECK(p.values(0, 0) == 1.0);
        CHECK(p.values(1, 0) == 2.0);
        CHECK(p.values(2, 0) == 3.0);
        CHECK(p.dates[2] == parse_date("2001-03"));
    }

    TEST_CASE("non-positive value is an error naming the row") {
        const auto path =
            write_temp_csv("lv_ingest_neg.csv", "date,x\n2001-01,-0.1\n2001-02,2.0\n");
        CHECK(throws_containing([&] { ingest_csv(path); }, "row 2"));
        CHECK(throws_containing([&] { ingest_csv(path); }, "positive"));
    }

    TEST_CASE("rows with missing cells are dropped and counted") {
        const auto path = write_temp_csv(
            "lv_ingest_miss.csv", "date,x,y\n2001-01,1.0,2.0\n2001-02,,2.5\n2001-03,3.0,NA\n");
        const RawPanel p = ingest_csv(path);
        CHECK(p.T() == 1);
        CHECK(p.rows_dropped == 2);
        CHECK(p.values(0, 1) == 2.0);
    }

    TEST_CASE("schema selects and reorders columns") {
        const auto path =
            write_temp_csv("lv_ingest_schema.csv", "date,a,b\n2001-01,1.0,10.0\n2001-02,2.0,20.0\n");
        const RawPanel p = ingest_csv(path, {"b", "a"});
        CHECK(p.names == std::vector<std::string>{"b", "a"});
        CHECK(p.values(0, 0) == 10.0);
        CHECK(p.values(0, 1) == 1.0);
        CHECK(throws_containing([&] { ingest_csv(path, {"zz"}); }, "schema"));
    }

    TEST_CASE("date discipline: strictly increasing, one frequency") {
        const auto dup =
            write_temp_csv("lv_ingest_dup.csv", "date,x\n2001-01,1.0\n2001-01,2.0\n");
        CHECK(throws_containing([&] { ingest_csv(dup); }, "increasing"));
        const auto mixed =
            write_temp_csv("lv_ingest_mixed.csv", "date,x\n2001-01,1.0\n2001-02-03,2.0\n");
        CHECK(throws_containing([&] { ingest_csv(mixed); }, "mixed"));
    }

    TEST_CASE("daily values sum into calendar months") {
        const auto path = write_temp_csv("lv_agg1.csv",
                                         "date,x\n2001-01-03,0.1\n2001-01-10,0.2\n2001-01-29,0.3\n");
        const RawPanel monthly = aggregate_monthly(ingest_csv(path));
        CHECK(monthly.T() == 1);
        CHECK(monthly.frequency == Frequency::Monthly);
        CHECK(monthly.values(0, 0) == doctest::Approx(0.6));
        CHECK(monthly.dates[0] == parse_date("2001-01"));
    }

    TEST_CASE("months aggregate independently") {
        const auto path = write_temp_csv(
            "lv_agg2.csv", "date,x\n2001-01-15,1.0\n2001-02-01,2.0\n2001-02-02,3.0\n");
        const RawPanel monthly = aggregate_monthly(ingest_csv(path));
        REQUIRE(monthly.T() == 2);
        CHECK(monthly.values(0, 0) == doctest::Approx(1.0));
        CHECK(monthly.values(1, 0) == doctest::Approx(5.0));
    }

    TEST_CASE("monthly input cannot be aggregated again") {
        const auto path = write_temp_csv("lv_agg3.csv", "date,x\n2001-01,1.0\n2001-02,2.0\n");
        CHECK_THROWS_AS(aggregate_monthly(ingest_csv(path)), std::invalid_argument);
    }

    TEST_CASE("an empty month inside the range is reported") {
        const auto path =
            write_temp_csv("lv_agg4.csv", "date,x\n2001-01-15,1.0\n2001-03-15,2.0\n");
        std::vector<std::string> warnings;
        const RawPanel monthly = aggregate_monthly(ingest_csv(path), &warnings);
        CHECK(monthly.T() == 2);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("2001-02") != std::string::npos);
    }

    TEST_CASE("log of a constant series centers to zero") {
        RawPanel raw;
        raw.frequency = Frequency::Monthly;
        raw.dates = {parse_date("2001-01"), parse_date("2001-02"), parse_date("2001-03")};
        raw.names = {"x"};
        const double e = std::exp(1.0);
        raw.values = Eigen::MatrixXd::Constant(3, 1, e);
        const TimeSeriesPanel p = log_center(raw);
        CHECK(p.values.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
        CHECK(p.means(0) == doctest::Approx(1.0));
    }

    TEST_CASE("two-point log centering") {
        RawPanel raw;
        raw.frequency = Frequency::Monthly;
        raw.dates = {parse_date("2001-01"), parse_date("2001-02")};
        raw.names = {"x"};
        raw.values.resize(2, 1);
        raw.values << 1.0, std::exp(2.0);
        const TimeSeriesPanel p = log_center(raw);
        CHECK(p.values(0, 0) == doctest::Approx(-1.0));
        CHECK(p.values(1, 0) == doctest::Approx(1.0));
        CHECK(p.means(0) == doctest::Approx(1.0));
    }

    TEST_CASE("columns center independently") {
        RawPanel raw;
        raw.frequency = Frequency::Monthly;
        raw.dates = {parse_date("2001-01"), parse_date("2001-02"), parse_date("2001-03")};
        raw.names = {"a", "b"};
        raw.values.resize(3, 2);
        raw.values << 1.0, 9.0, 2.0, 1.0, 3.0, 4.0;
        const TimeSeriesPanel p = log_center(raw);
        CHECK(p.values.col(0).sum() == doctest::Approx(0.0));
        CHECK(p.values.col(1).sum() == doctest::Approx(0.0));
        CHECK(p.means(0) == doctest::Approx(std::log(6.0) / 3.0));
    }

    TEST_CASE("symmetric series has zero mean and skewness") {
        TimeSeriesPanel p;
        p.names = {"x"};
        p.values.resize(3, 1);
        p.values << -1.0, 0.0, 1.0;
        p.means = Eigen::VectorXd::Zero(1);
        const Descriptives d = descriptives(p);
        CHECK(d.mean(0) == doctest::Approx(0.0));
        CHECK(d.skewness(0) == doctest::Approx(0.0));
        CHECK(d.sd(0) == doctest::Approx(1.0));            // n-1 denominator
        CHECK(d.kurtosis(0) == doctest::Approx(1.5));      // m4/m2^2 = (2/3)/(2/3)^2
    }

    TEST_CASE("alternating series has lag-1 autocorrelation near -1") {
        TimeSeriesPanel p;
        p.names = {"x"};
        p.values.resize(100, 1);
        for (int t = 0; t < 100; ++t) p.values(t, 0) = (t % 2 == 0) ? 1.0 : -1.0;
        p.means = Eigen::VectorXd::Zero(1);
        const Descriptives d = descriptives(p);
        // sum of 99 cross products of -1 over a denominator of 100
        CHECK(d.autocorr1(0) == doctest::Approx(-0.99));
        CHECK(d.autocorr1(0) <= -0.95);
    }

    TEST_CASE("descriptives work off the uncentered scale") {
        TimeSeriesPanel p;
        p.names = {"x"};
        p.values.resize(3, 1);
        p.values << -1.0, 0.0, 1.0;
        p.means = Eigen::VectorXd::Constant(1, 5.0);
        const Descriptives d = descriptives(p);
        CHECK(d.mean(0) == doctest::Approx(5.0));
        CHECK(d.sd(0) == doctest::Approx(1.0));  // shift leaves moments alone
    }

    TEST_CASE("degenerate descriptives inputs are rejected") {
        TimeSeriesPanel flat;
        flat.names = {"x"};
        flat.values = Eigen::MatrixXd::Zero(5, 1);
        flat.means = Eigen::VectorXd::Zero(1);
        CHECK(throws_containing([&] { descriptives(flat); }, "zero variance"));

        TimeSeriesPanel tiny;
        tiny.names = {"x"};
        tiny.values.resize(2, 1);
        tiny.values << -1.0, 1.0;
        tiny.means = Eigen::VectorXd::Zero(1);
        CHECK_THROWS_AS(descriptives(tiny), std::invalid_argument);
    }
}
