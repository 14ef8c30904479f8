#include "lassovar/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lassovar {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    const std::string content = read_file(path);
    std::vector<std::string> lines;
    std::string line;
    std::stringstream ss(content);
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": cannot parse number '" + s + "'");
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel) {
    std::ostringstream out;
    out << "date";
    for (const auto& name : panel.names) out << ',' << name;
    out << '\n';
    for (Eigen::Index t = 0; t < panel.T(); ++t) {
        out << format_date(panel.dates[static_cast<std::size_t>(t)]);
        for (Eigen::Index j = 0; j < panel.q(); ++j) out << ',' << format_double(panel.values(t, j));
        out << '\n';
    }
    write_file(path, out.str());
}

void write_means_csv(const std::string& path, const TimeSeriesPanel& panel) {
    std::ostringstream out;
    out << "series,mean\n";
    for (Eigen::Index j = 0; j < panel.q(); ++j)
        out << panel.names[static_cast<std::size_t>(j)] << ',' << format_double(panel.means(j))
            << '\n';
    write_file(path, out.str());
}

TimeSeriesPanel load_panel_artifact(const std::string& dir) {
    const std::string panel_path = dir + "/panel.csv";
    const std::string means_path = dir + "/means.csv";

    const auto lines = read_lines(panel_path);
    if (lines.size() < 2) throw std::runtime_error(panel_path + ": no data rows");
    const auto header = split_line(lines[0]);
    if (header.size() < 2 || header[0] != "date")
        throw std::runtime_error(panel_path + ": malformed header");

    TimeSeriesPanel panel;
    panel.names.assign(header.begin() + 1, header.end());
    const Eigen::Index q = static_cast<Eigen::Index>(panel.names.size());
    const Eigen::Index T = static_cast<Eigen::Index>(lines.size()) - 1;
    panel.values.resize(T, q);
    panel.dates.reserve(static_cast<std::size_t>(T));
    for (Eigen::Index t = 0; t < T; ++t) {
        const auto cells = split_line(lines[static_cast<std::size_t>(t) + 1]);
        if (static_cast<Eigen::Index>(cells.size()) != q + 1)
            throw std::runtime_error(panel_path + ": row " + std::to_string(t + 2) +
                                     " has wrong cell count");
        panel.dates.push_back(parse_date(cells[0]));
        for (Eigen::Index j = 0; j < q; ++j)
            panel.values(t, j) =
                parse_double(cells[static_cast<std::size_t>(j) + 1], panel_path);
    }

    const auto mean_lines = read_lines(means_path);
    if (static_cast<Eigen::Index>(mean_lines.size()) != q + 1)
        throw std::runtime_error(means_path + ": expected one row per series");
    panel.means.resize(q);
    for (Eigen::Index j = 0; j < q; ++j) {
        const auto cells = split_line(mean_lines[static_cast<std::size_t>(j) + 1]);
        if (cells.size() != 2 || cells[0] != panel.names[static_cast<std::size_t>(j)])
            throw std::runtime_error(means_path + ": series order must match panel.csv");
        panel.means(j) = parse_double(cells[1], means_path);
    }
    return panel;
}

void write_descriptives_csv(const std::string& path, const Descriptives& d) {
    std::ostringstream out;
    out << "series,mean,st_dev,skewness,kurtosis,autocorr_lag1\n";
    for (std::size_t i = 0; i < d.names.size(); ++i) {
        const Eigen::Index j = static_cast<Eigen::Index>(i);
        out << d.names[i] << ',' << format_double(d.mean(j)) << ',' << format_double(d.sd(j))
            << ',' << format_double(d.skewness(j)) << ',' << format_double(d.kurtosis(j)) << ','
            << format_double(d.autocorr1(j)) << '\n';
    }
    write_file(path, out.str());
}

void write_lag_lengths_csv(const std::string& path, const std::vector<std::string>& names,
                           const std::vector<std::string>& estimator_labels,
                           const Eigen::MatrixXd& lengths) {
    if (lengths.rows() != static_cast<Eigen::Index>(names.size()) ||
        lengths.cols() != static_cast<Eigen::Index>(estimator_labels.size()))
        throw std::invalid_argument("write_lag_lengths_csv: shape mismatch");
    std::ostringstream out;
    out << "series";
    for (const auto& label : estimator_labels) out << ',' << label;
    out << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << names[i];
        for (Eigen::Index c = 0; c < lengths.cols(); ++c)
            out << ',' << format_double(lengths(static_cast<Eigen::Index>(i), c));
        out << '\n';
    }
    write_file(path, out.str());
}

void write_lag_matrix_csv(const std::string& path, const std::vector<std::string>& names,
                          const Eigen::MatrixXd& per_equation_lengths) {
    const Eigen::Index q = static_cast<Eigen::Index>(names.size());
    if (per_equation_lengths.rows() != q || per_equation_lengths.cols() != q)
        throw std::invalid_argument("write_lag_matrix_csv: matrix must be q x q");
    std::ostringstream out;
    out << "series";
    for (const auto& name : names) out << ',' << name;  // equation columns
    out << '\n';
    for (Eigen::Index r = 0; r < q; ++r) {
        out << names[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < q; ++c) out << ',' << format_double(per_equation_lengths(c, r));
        out << '\n';
    }
    write_file(path, out.str());
}

void write_afe_csv(const std::string& path, const BacktestReport& report) {
    std::ostringstream out;
    out << "series,horizon";
    for (const auto& m : report.methods) out << ',' << m.label();
    out << '\n';
    const Eigen::Index q = static_cast<Eigen::Index>(report.index_names.size());
    for (Eigen::Index i = 0; i < q; ++i) {
        for (std::size_t k = 0; k < report.horizons.size(); ++k) {
            out << report.index_names[static_cast<std::size_t>(i)] << ','
                << report.horizons[k].h;
            for (std::size_t m = 0; m < report.methods.size(); ++m)
                out << ',' << format_double(report.afe[m](i, static_cast<Eigen::Index>(k)));
            out << '\n';
        }
    }
    write_file(path, out.str());
}

void write_mafe_csv(const std::string& path, const BacktestReport& report) {
    std::ostringstream out;
    out << "method";
    for (const auto& block : report.horizons) out << ",h" << block.h;
    out << '\n';
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
        out << report.methods[m].label();
        for (std::size_t k = 0; k < report.horizons.size(); ++k)
            out << ','
                << format_double(report.mafe(static_cast<Eigen::Index>(m),
                                             static_cast<Eigen::Index>(k)));
        out << '\n';
    }
    write_file(path, out.str());
}

void write_audit_jsonl(const std::string& path, const BacktestReport& report,
                       const BacktestConfig& config) {
    const bool rolling = config.window.kind == WindowSpec::Kind::Rolling;
    std::ostringstream out;
    for (const auto& block : report.horizons) {
        for (std::size_t r = 0; r < block.origins.size(); ++r) {
            const Eigen::Index row = static_cast<Eigen::Index>(r);
            const long t = block.origins[r];
            const long w0 = rolling ? std::max<long>(0, t - config.window.size) : 0;
            nlohmann::ordered_json line;
            line["h"] = block.h;
            line["origin"] = t;
            line["window_start"] = w0;
            line["window_rows"] = t - w0;
            line["target_date"] = format_date(block.target_dates[r]);
            line["sigma"] = std::vector<double>(
                block.sigmas.row(row).begin(), block.sigmas.row(row).end());
            line["actual"] = std::vector<double>(
                block.actuals.row(row).begin(), block.actuals.row(row).end());
            nlohmann::ordered_json fc;
            for (std::size_t m = 0; m < report.methods.size(); ++m)
                fc[report.methods[m].label()] = std::vector<double>(
                    block.forecasts[m].row(row).begin(), block.forecasts[m].row(row).end());
            line["forecasts"] = std::move(fc);
            out << line.dump() << '\n';
        }
    }
    write_file(path, out.str());
}

}  // namespace lassovar
