#pragma once

#include <string>
#include <vector>

#include "lassovar/backtest.hpp"
#include "lassovar/estimators.hpp"
#include "lassovar/panel.hpp"

namespace lassovar {

/// Doubles are written with enough digits (%.17g) to round-trip exactly, so a rerun
/// with identical inputs produces byte-identical files.
std::string format_double(double v);

void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel);
void write_means_csv(const std::string& path, const TimeSeriesPanel& panel);
TimeSeriesPanel load_panel_artifact(const std::string& dir);  // reads panel.csv + means.csv

void write_descriptives_csv(const std::string& path, const Descriptives& d);

/// Univariate table: one row per series with its per-estimator lag length.
void write_lag_lengths_csv(const std::string& path, const std::vector<std::string>& names,
                           const std::vector<std::string>& estimator_labels,
                           const Eigen::MatrixXd& lengths);  // series x estimators

/// System matrix, source-series rows by equation columns: cell (r, c) is the lag
/// length of series r inside equation c.
void write_lag_matrix_csv(const std::string& path, const std::vector<std::string>& names,
                          const Eigen::MatrixXd& per_equation_lengths);  // q_eq x q_series

void write_afe_csv(const std::string& path, const BacktestReport& report);
void write_mafe_csv(const std::string& path, const BacktestReport& report);

/// One JSON line per (horizon, origin): window bounds, per-method forecast vectors,
/// realized values. Stable key order.
void write_audit_jsonl(const std::string& path, const BacktestReport& report,
                       const BacktestConfig& config);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lassovar
