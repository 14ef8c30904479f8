#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace lassovar {

enum class Frequency { Daily, Monthly };

/// Calendar stamp. Monthly data carries day == 0.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    friend bool operator==(const Date& a, const Date& b) {
        return a.year == b.year && a.month == b.month && a.day == b.day;
    }
    friend bool operator<(const Date& a, const Date& b) {
        if (a.year != b.year) return a.year < b.year;
        if (a.month != b.month) return a.month < b.month;
        return a.day < b.day;
    }
    friend bool operator<=(const Date& a, const Date& b) { return a < b || a == b; }
};

/// Parses "YYYY-MM" (day -> 0) or "YYYY-MM-DD". Throws std::runtime_error on malformed input.
Date parse_date(const std::string& text);

/// "YYYY-MM" for monthly stamps, "YYYY-MM-DD" otherwise.
std::string format_date(const Date& d);

/// As-ingested panel: strictly increasing dates, all values > 0, no missing cells.
struct RawPanel {
    Frequency frequency = Frequency::Monthly;
    std::vector<Date> dates;
    std::vector<std::string> names;
    Eigen::MatrixXd values;  // rows = time, cols = series
    long rows_dropped = 0;   // input rows discarded for missing cells

    Eigen::Index T() const { return values.rows(); }
    Eigen::Index q() const { return values.cols(); }
};

/// Centered log panel ready for model fitting. values = log(raw) - means (columnwise).
struct TimeSeriesPanel {
    std::vector<Date> dates;
    std::vector<std::string> names;
    Eigen::MatrixXd values;  // T x q, each column sums to ~0
    Eigen::VectorXd means;   // centering constants on the log scale

    Eigen::Index T() const { return values.rows(); }
    Eigen::Index q() const { return values.cols(); }
};

struct Descriptives {
    std::vector<std::string> names;
    Eigen::VectorXd mean;      // of the log series
    Eigen::VectorXd sd;        // sample sd (n-1 denominator)
    Eigen::VectorXd skewness;  // moment estimator m3 / m2^1.5
    Eigen::VectorXd kurtosis;  // raw m4 / m2^2 (normal ~ 3)
    Eigen::VectorXd autocorr1; // lag-1 autocorrelation
};

/// Reads a CSV with header "date,<name1>,...". Detects daily vs monthly stamps from the
/// first data row and requires consistency. Rows with any missing cell (empty, NA, NaN)
/// are dropped and counted; non-positive values and non-increasing dates are errors.
/// A non-empty `schema` selects and orders the value columns; unknown names are errors.
RawPanel ingest_csv(const std::string& path, const std::vector<std::string>& schema = {});

/// Sums daily realized variances into calendar months. Input must be daily.
/// Months inside the sample range with no retained days are reported via `warnings`.
RawPanel aggregate_monthly(const RawPanel& raw, std::vector<std::string>* warnings = nullptr);

/// Takes logs and removes columnwise means. Input must be monthly and positive.
TimeSeriesPanel log_center(const RawPanel& raw);

/// Per-series moments of the uncentered log series. Requires T >= 3 and nonzero variance.
Descriptives descriptives(const TimeSeriesPanel& panel);

}  // namespace lassovar
