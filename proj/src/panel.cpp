#include "lassovar/panel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lassovar {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool is_missing_token(const std::string& t) {
    if (t.empty()) return true;
    std::string low;
    for (char c : t) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return low == "na" || low == "nan" || low == "null";
}

int parse_int_field(const std::string& s, std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw std::runtime_error("malformed date: " + s);
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

Date parse_date(const std::string& text) {
    Date d;
    if (text.size() == 7 && text[4] == '-') {
        d.year = parse_int_field(text, 0, 4);
        d.month = parse_int_field(text, 5, 2);
        d.day = 0;
    } else if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        d.year = parse_int_field(text, 0, 4);
        d.month = parse_int_field(text, 5, 2);
        d.day = parse_int_field(text, 8, 2);
    } else {
        throw std::runtime_error("malformed date: " + text);
    }
    if (d.month < 1 || d.month > 12 || (d.day != 0 && (d.day < 1 || d.day > 31)))
        throw std::runtime_error("date out of range: " + text);
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    if (d.day == 0)
        std::snprintf(buf, sizeof buf, "%04d-%02d", d.year, d.month);
    else
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

RawPanel ingest_csv(const std::string& path, const std::vector<std::string>& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty input file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "date")
        throw std::runtime_error("header must be 'date,<name>,...' in " + path);

    std::vector<std::string> all_names(header.begin() + 1, header.end());
    // schema selects and orders the value columns; empty keeps file order
    std::vector<std::size_t> pick;
    std::vector<std::string> names;
    if (schema.empty()) {
        names = all_names;
        for (std::size_t j = 0; j < all_names.size(); ++j) pick.push_back(j);
    } else {
        for (const auto& want : schema) {
            auto it = std::find(all_names.begin(), all_names.end(), want);
            if (it == all_names.end())
                throw std::runtime_error("schema column not in file: " + want);
            pick.push_back(static_cast<std::size_t>(it - all_names.begin()));
            names.push_back(want);
        }
    }

    std::vector<Date> dates;
    std::vector<std::vector<double>> rows;
    long dropped = 0;
    bool monthly = false;
    bool first_row = true;
    long line_no = 1;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("row " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        Date d = parse_date(fields[0]);
        if (first_row) {
            monthly = (d.day == 0);
            first_row = false;
        } else if ((d.day == 0) != monthly) {
            throw std::runtime_error("row " + std::to_string(line_no) +
                                     ": mixed daily and monthly date stamps");
        }
        if (!dates.empty() && !(dates.back() < d))
            throw std::runtime_error("row " + std::to_string(line_no) +
                                     ": dates must be strictly increasing (" + fields[0] + ")");

        std::vector<double> vals(pick.size());
        bool missing = false;
        for (std::size_t k = 0; k < pick.size(); ++k) {
            const std::string& tok = fields[1 + pick[k]];
            if (is_missing_token(tok)) {
                missing = true;
                break;
            }
            char* end = nullptr;
            double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw std::runtime_error("row " + std::to_string(line_no) +
                                         ": unparseable value '" + tok + "'");
            if (!(v > 0.0))
                throw std::runtime_error("row " + std::to_string(line_no) + " (" + fields[0] +
                                         "): realized variance must be positive, got " + tok);
            vals[k] = v;
        }
        if (missing) {
            ++dropped;
            continue;
        }
        dates.push_back(d);
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw std::runtime_error("no usable rows in " + path);

    RawPanel out;
    out.frequency = monthly ? Frequency::Monthly : Frequency::Daily;
    out.dates = std::move(dates);
    out.names = std::move(names);
    out.rows_dropped = dropped;
    out.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(pick.size()));
    for (Eigen::Index i = 0; i < out.values.rows(); ++i)
        for (Eigen::Index j = 0; j < out.values.cols(); ++j)
            out.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return out;
}

RawPanel aggregate_monthly(const RawPanel& raw, std::vector<std::string>* warnings) {
    if (raw.frequency != Frequency::Daily)
        throw std::invalid_argument("aggregate_monthly: input is not daily");

    RawPanel out;
    out.frequency = Frequency::Monthly;
    out.names = raw.names;
    out.rows_dropped = raw.rows_dropped;

    std::vector<Eigen::RowVectorXd> sums;
    for (Eigen::Index i = 0; i < raw.T(); ++i) {
        Date m{raw.dates[static_cast<std::size_t>(i)].year,
               raw.dates[static_cast<std::size_t>(i)].month, 0};
        if (out.dates.empty() || !(out.dates.back() == m)) {
            out.dates.push_back(m);
            sums.emplace_back(Eigen::RowVectorXd::Zero(raw.q()));
        }
        sums.back() += raw.values.row(i);
    }

    if (warnings) {
        // months between the first and last stamp with no retained days
        Date cur = out.dates.front();
        std::size_t k = 0;
        while (cur < out.dates.back() || cur == out.dates.back()) {
            if (k < out.dates.size() && out.dates[k] == cur) {
                ++k;
            } else {
                warnings->push_back("month " + format_date(cur) +
                                    " has no retained days and was dropped");
            }
            if (++cur.month > 12) {
                cur.month = 1;
                ++cur.year;
            }
        }
    }

    out.values.resize(static_cast<Eigen::Index>(sums.size()), raw.q());
    for (Eigen::Index i = 0; i < out.values.rows(); ++i)
        out.values.row(i) = sums[static_cast<std::size_t>(i)];
    return out;
}

TimeSeriesPanel log_center(const RawPanel& raw) {
    if (raw.frequency != Frequency::Monthly)
        throw std::invalid_argument("log_center: input must be monthly (aggregate first)");
    if (!(raw.values.array() > 0.0).all())
        throw std::runtime_error("log_center: non-positive realized variance");

    TimeSeriesPanel out;
    out.dates = raw.dates;
    out.names = raw.names;
    out.values = raw.values.array().log().matrix();
    out.means = out.values.colwise().mean();
    out.values.rowwise() -= out.means.transpose();
    return out;
}

Descriptives descriptives(const TimeSeriesPanel& panel) {
    const Eigen::Index T = panel.T(), q = panel.q();
    if (T < 3) throw std::invalid_argument("descriptives: need at least 3 observations");

    Descriptives d;
    d.names = panel.names;
    d.mean.resize(q);
    d.sd.resize(q);
    d.skewness.resize(q);
    d.kurtosis.resize(q);
    d.autocorr1.resize(q);

    for (Eigen::Index j = 0; j < q; ++j) {
        Eigen::VectorXd x = panel.values.col(j).array() + panel.means(j);
        const double mean = x.mean();
        Eigen::VectorXd c = x.array() - mean;
        const double ss = c.squaredNorm();
        if (ss <= 0.0)
            throw std::runtime_error("descriptives: zero variance in series " +
                                     panel.names[static_cast<std::size_t>(j)]);
        const double m2 = ss / static_cast<double>(T);
        const double m3 = c.array().cube().sum() / static_cast<double>(T);
        const double m4 = c.array().pow(4).sum() / static_cast<double>(T);
        d.mean(j) = mean;
        d.sd(j) = std::sqrt(ss / static_cast<double>(T - 1));
        d.skewness(j) = m3 / std::pow(m2, 1.5);
        d.kurtosis(j) = m4 / (m2 * m2);
        d.autocorr1(j) = c.tail(T - 1).dot(c.head(T - 1)) / ss;
    }
    return d;
}

}  // namespace lassovar
