#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lassovar/estimators.hpp"
#include "lassovar/panel.hpp"

namespace lassovar {

enum class ModelKind { AR, VAR };

/// One forecasting method: model family x estimator x combination on/off.
struct MethodSpec {
    ModelKind model = ModelKind::VAR;
    Estimator estimator = Estimator::Lasso;
    bool combined = true;  // false: plug in the single BIC-argmin fit

    std::string label() const;  // e.g. "var_lasso_fc", "ar_ols_nofc"
};

/// The full 2 x 4 x 2 method grid in canonical (deterministic) order.
std::vector<MethodSpec> all_methods();

struct WindowSpec {
    enum class Kind { Expanding, Rolling } kind = Kind::Expanding;
    int size = 0;  // rolling only: number of most recent observations kept
};

struct BacktestConfig {
    std::vector<int> horizons = {1, 2, 3, 6};
    WindowSpec window;
    int start = 0;  // first forecast origin t (training points used); 0 -> floor(T/2)
    int p = 36;     // lag order of the penalized fits
    int L = 20;     // grid size
    WeightScheme scheme = WeightScheme::BIC;
    std::vector<MethodSpec> methods = all_methods();
    SolverConfig solver;
    double zero_tol = 1e-8;
    int threads = 0;  // 0 -> hardware concurrency
};

/// Everything produced at one horizon: forecasts, realized values and errors are on
/// the uncentered log scale; rows = origins in ascending t, cols = series.
struct HorizonResults {
    int h = 0;
    std::vector<int> origins;        // t = number of observations available at the origin
    std::vector<Date> target_dates;  // date of the forecast target (origin index t+h-1)
    Eigen::MatrixXd actuals;         // origins x q
    Eigen::MatrixXd sigmas;          // origins x q, sample sd of the log series over 1..t
    std::vector<Eigen::MatrixXd> forecasts;  // per method, origins x q
    std::vector<Eigen::MatrixXd> errors;     // per method, actual - forecast
};

struct BacktestReport {
    std::vector<std::string> index_names;
    std::vector<MethodSpec> methods;
    std::vector<HorizonResults> horizons;
    // afe[m] is q x H: mean absolute error per series (rows) and horizon (cols).
    std::vector<Eigen::MatrixXd> afe;
    // mafe(m, k): sd-scaled mean absolute error of method m at horizon k.
    Eigen::MatrixXd mafe;
    long skipped_origins = 0;
    std::vector<std::string> warnings;
};

/// Mean absolute error of one series' error column.
double afe_mean(const Eigen::Ref<const Eigen::VectorXd>& errors);

/// (1/q) sum_i mean_t |e_{i,t}| / sigma_{i,t}. Throws std::runtime_error when any
/// sigma is zero. Shapes must match (origins x q).
double mafe_mean(const Eigen::MatrixXd& errors, const Eigen::MatrixXd& sigmas);

/// MAFE per method and horizon restricted to target dates in [from, to] (inclusive).
/// Rows = methods, cols = horizons; NaN where the subperiod holds no targets.
Eigen::MatrixXd subperiod_mafe(const BacktestReport& report, const Date& from, const Date& to);

/// Walks forecast origins t = start..T-h for each horizon, refits every method on the
/// training window (expanding 1..t or rolling t-S+1..t, clipped at the sample start),
/// re-centers per window, forecasts h steps ahead and scores on the uncentered log
/// scale. Origins whose window cannot support the design (rows < p + h) are skipped
/// and counted. Deterministic for a fixed config, independent of thread count.
BacktestReport run_backtest(const TimeSeriesPanel& panel, const BacktestConfig& config);

}  // namespace lassovar
