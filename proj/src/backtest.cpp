#include "lassovar/backtest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace lassovar {

std::string MethodSpec::label() const {
    std::string out = model == ModelKind::AR ? "ar_" : "var_";
    out += estimator_name(estimator);
    out += combined ? "_fc" : "_nofc";
    return out;
}

std::vector<MethodSpec> all_methods() {
    std::vector<MethodSpec> out;
    for (ModelKind mk : {ModelKind::AR, ModelKind::VAR})
        for (Estimator e :
             {Estimator::OLS, Estimator::Lasso, Estimator::Hierarchical, Estimator::Ordered})
            for (bool fc : {false, true}) out.push_back({mk, e, fc});
    return out;
}

double afe_mean(const Eigen::Ref<const Eigen::VectorXd>& errors) {
    if (errors.size() == 0) return std::numeric_limits<double>::quiet_NaN();
    return errors.cwiseAbs().mean();
}

double mafe_mean(const Eigen::MatrixXd& errors, const Eigen::MatrixXd& sigmas) {
    if (errors.rows() != sigmas.rows() || errors.cols() != sigmas.cols())
        throw std::invalid_argument("mafe_mean: shape mismatch");
    if (errors.size() == 0) return std::numeric_limits<double>::quiet_NaN();
    if (!(sigmas.minCoeff() > 0)) throw std::runtime_error("mafe_mean: nonpositive sigma");
    // mean over all cells equals the series-average of per-series means here,
    // because every series has the same number of origins
    return errors.cwiseAbs().cwiseQuotient(sigmas).mean();
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Need {
    bool fc = false;
    bool nofc = false;
    int fc_idx = -1;
    int nofc_idx = -1;
    bool any() const { return fc || nofc; }
};

struct MethodTable {
    // indexed [model][estimator]
    Need need[2][4];
    static int model_of(ModelKind m) { return m == ModelKind::AR ? 0 : 1; }
    static int est_of(Estimator e) { return static_cast<int>(e); }
};

struct OriginTask {
    std::size_t h_idx = 0;
    Eigen::Index row = 0;  // row in the horizon block
    Eigen::Index t = 0;    // training observations
    Eigen::Index w0 = 0;   // first window row
};

// one model family at one origin: penalized paths share the design Gram
class FamilyFitter {
  public:
    FamilyFitter(const Eigen::MatrixXd& cw, int p, int h, int subset, const BacktestConfig& cfg)
        : cw_(cw), p_(p), h_(h), subset_(subset), cfg_(cfg) {
        design_ = build_design(cw, p, h, subset);
        xrow_ = forecast_row(cw, p, subset);
    }

    // forecast on the centered scale for each grid point / order (rows) and
    // each equation (cols); empty on degenerate designs
    bool penalized(PenaltyKind kind, Eigen::MatrixXd& individual, std::vector<FitStats>& stats) {
        if (!gram_ready_) {
            gram_ = make_design_gram(design_);
            degenerate_ = !(gram_.xty.cwiseAbs().maxCoeff() > 0);
            gram_ready_ = true;
        }
        if (degenerate_) return false;
        const GroupLayout layout{design_.q_effective, design_.p};
        const double lam_max = lambda_max_from_xty(kind, gram_.xty, layout);
        const LambdaGrid grid = build_grid_values(lam_max, design_.X.cols(), design_.n, cfg_.L);
        const LambdaPath path = fit_path(design_, gram_, kind, grid, cfg_.solver, cfg_.zero_tol);
        collect(path, individual, stats);
        return true;
    }

    bool least_squares(Eigen::MatrixXd& individual, std::vector<FitStats>& stats) {
        const Eigen::Index W = cw_.rows();
        const int p_ls = max_ls_order(W, design_.q_effective, h_, p_);
        if (p_ls < 1) return false;
        const LambdaPath path = fit_ols_by_order(cw_, p_ls, h_, p_, subset_);
        collect(path, individual, stats);
        return true;
    }

  private:
    void collect(const LambdaPath& path, Eigen::MatrixXd& individual,
                 std::vector<FitStats>& stats) {
        const Eigen::Index L = static_cast<Eigen::Index>(path.points.size());
        const Eigen::Index q_eq = design_.Y.cols();
        individual.resize(L, q_eq);
        stats.clear();
        stats.reserve(path.points.size());
        for (Eigen::Index m = 0; m < L; ++m) {
            const auto& pt = path.points[static_cast<std::size_t>(m)];
            individual.row(m) = (pt.coef.beta * xrow_).transpose();
            stats.push_back(pt.stats);
        }
    }

    const Eigen::MatrixXd& cw_;
    int p_, h_, subset_;
    const BacktestConfig& cfg_;
    LagDesign design_;
    DesignGram gram_;
    Eigen::VectorXd xrow_;
    bool gram_ready_ = false;
    bool degenerate_ = false;
};

// fc/nofc forecasts from one path's individual forecasts, on the centered scale;
// falls back to the null forecast (zero, the window mean once uncentered) when no
// fit is valid
void emit(const Eigen::MatrixXd& individual, const std::vector<FitStats>& stats,
          const Need& need, const BacktestConfig& cfg, Eigen::Index q_eq,
          Eigen::RowVectorXd& fc_row, Eigen::RowVectorXd& nofc_row, bool& fell_back) {
    fell_back = false;
    bool have_weights = true;
    Eigen::VectorXd w;
    std::size_t argmin = 0;
    try {
        if (need.fc) w = combination_weights(stats, cfg.scheme);
        if (need.nofc) argmin = select_by_bic(stats);
    } catch (const std::runtime_error&) {
        have_weights = false;
    }
    if (!have_weights) {
        fell_back = true;
        if (need.fc) fc_row = Eigen::RowVectorXd::Zero(q_eq);
        if (need.nofc) nofc_row = Eigen::RowVectorXd::Zero(q_eq);
        return;
    }
    if (need.fc) fc_row = combine_forecasts(individual, w, cfg.scheme).combined.transpose();
    if (need.nofc) nofc_row = individual.row(static_cast<Eigen::Index>(argmin));
}

}  // namespace

Eigen::MatrixXd subperiod_mafe(const BacktestReport& report, const Date& from, const Date& to) {
    const std::size_t M = report.methods.size();
    const std::size_t H = report.horizons.size();
    Eigen::MatrixXd out =
        Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(H), kNaN);
    for (std::size_t k = 0; k < H; ++k) {
        const auto& block = report.horizons[k];
        std::vector<Eigen::Index> rows;
        for (std::size_t r = 0; r < block.target_dates.size(); ++r)
            if (from <= block.target_dates[r] && block.target_dates[r] <= to)
                rows.push_back(static_cast<Eigen::Index>(r));
        if (rows.empty()) continue;
        const Eigen::Index q = block.sigmas.cols();
        Eigen::MatrixXd sig(static_cast<Eigen::Index>(rows.size()), q);
        for (std::size_t r = 0; r < rows.size(); ++r)
            sig.row(static_cast<Eigen::Index>(r)) = block.sigmas.row(rows[r]);
        for (std::size_t m = 0; m < M; ++m) {
            Eigen::MatrixXd err(static_cast<Eigen::Index>(rows.size()), q);
            for (std::size_t r = 0; r < rows.size(); ++r)
                err.row(static_cast<Eigen::Index>(r)) = block.errors[m].row(rows[r]);
            try {
                out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) =
                    mafe_mean(err, sig);
            } catch (const std::runtime_error&) {
                // zero sigma in the subperiod: leave NaN
            }
        }
    }
    return out;
}

BacktestReport run_backtest(const TimeSeriesPanel& panel, const BacktestConfig& config) {
    const Eigen::Index T = panel.T(), q = panel.q();
    if (T < 2 || q < 1) throw std::invalid_argument("run_backtest: panel too small");
    if (config.horizons.empty()) throw std::invalid_argument("run_backtest: no horizons");
    if (config.p < 1 || config.L < 2 || config.zero_tol < 0)
        throw std::invalid_argument("run_backtest: invalid config");
    if (config.methods.empty()) throw std::invalid_argument("run_backtest: no methods");
    int min_h = config.horizons[0], max_h = config.horizons[0];
    for (std::size_t a = 0; a < config.horizons.size(); ++a) {
        const int h = config.horizons[a];
        if (h < 1) throw std::invalid_argument("run_backtest: horizons must be >= 1");
        for (std::size_t b = a + 1; b < config.horizons.size(); ++b)
            if (config.horizons[b] == h)
                throw std::invalid_argument("run_backtest: duplicate horizon");
        min_h = std::min(min_h, h);
        max_h = std::max(max_h, h);
    }
    const Eigen::Index t0 = config.start > 0 ? config.start : T / 2;
    if (t0 < 2 || t0 + min_h > T)
        throw std::invalid_argument("run_backtest: start leaves no forecast origin");
    const bool rolling = config.window.kind == WindowSpec::Kind::Rolling;
    if (rolling && config.window.size < config.p + max_h + 1)
        throw std::invalid_argument("run_backtest: rolling window must cover p + max horizon + 1");

    MethodTable table;
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        const auto& spec = config.methods[m];
        Need& need = table.need[MethodTable::model_of(spec.model)][MethodTable::est_of(
            spec.estimator)];
        bool& flag = spec.combined ? need.fc : need.nofc;
        int& idx = spec.combined ? need.fc_idx : need.nofc_idx;
        if (flag) throw std::invalid_argument("run_backtest: duplicate method " + spec.label());
        flag = true;
        idx = static_cast<int>(m);
    }

    // uncentered log scale: forecasts, errors and sigmas all live here
    Eigen::MatrixXd uncentered = panel.values;
    uncentered.rowwise() += panel.means.transpose();

    BacktestReport report;
    report.index_names = panel.names;
    report.methods = config.methods;

    std::vector<OriginTask> tasks;
    long skipped = 0;
    for (std::size_t k = 0; k < config.horizons.size(); ++k) {
        const int h = config.horizons[k];
        HorizonResults block;
        block.h = h;
        for (Eigen::Index t = t0; t + h <= T; ++t) {
            const Eigen::Index w0 = rolling ? std::max<Eigen::Index>(0, t - config.window.size)
                                            : 0;
            if (t - w0 < config.p + h) {
                ++skipped;
                continue;
            }
            OriginTask task;
            task.h_idx = k;
            task.row = static_cast<Eigen::Index>(block.origins.size());
            task.t = t;
            task.w0 = w0;
            tasks.push_back(task);
            block.origins.push_back(static_cast<int>(t));
            block.target_dates.push_back(panel.dates[static_cast<std::size_t>(t + h - 1)]);
        }
        const Eigen::Index O = static_cast<Eigen::Index>(block.origins.size());
        block.actuals = Eigen::MatrixXd::Constant(O, q, kNaN);
        block.sigmas = Eigen::MatrixXd::Constant(O, q, kNaN);
        block.forecasts.assign(config.methods.size(), Eigen::MatrixXd::Constant(O, q, kNaN));
        block.errors.assign(config.methods.size(), Eigen::MatrixXd::Constant(O, q, kNaN));
        report.horizons.push_back(std::move(block));
    }
    report.skipped_origins = skipped;

    std::vector<std::vector<std::string>> task_warnings(tasks.size());
    std::vector<std::exception_ptr> task_errors(tasks.size());

    auto run_task = [&](std::size_t task_id) {
        const OriginTask& task = tasks[task_id];
        HorizonResults& block = report.horizons[task.h_idx];
        const int h = block.h;
        const Eigen::Index W = task.t - task.w0;

        const Eigen::MatrixXd window = uncentered.middleRows(task.w0, W);
        const Eigen::RowVectorXd mu = window.colwise().mean();
        const Eigen::MatrixXd cw = window.rowwise() - mu;

        block.actuals.row(task.row) = uncentered.row(task.t + h - 1);
        for (Eigen::Index i = 0; i < q; ++i) {
            const auto head = uncentered.col(i).head(task.t);
            const double m = head.mean();
            block.sigmas(task.row, i) =
                std::sqrt((head.array() - m).square().sum() / static_cast<double>(task.t - 1));
        }

        auto warn = [&](const std::string& msg) { task_warnings[task_id].push_back(msg); };
        auto origin_tag = [&](const MethodSpec& spec) {
            return spec.label() + " at origin t=" + std::to_string(task.t) +
                   ", h=" + std::to_string(h);
        };

        for (ModelKind mk : {ModelKind::AR, ModelKind::VAR}) {
            const int mrow = MethodTable::model_of(mk);
            bool family_needed = false;
            for (int e = 0; e < 4; ++e) family_needed |= table.need[mrow][e].any();
            if (!family_needed) continue;

            // AR runs one fitter per series; VAR one fitter for the system
            const Eigen::Index n_fits = mk == ModelKind::AR ? q : 1;
            for (Eigen::Index fit = 0; fit < n_fits; ++fit) {
                const int subset = mk == ModelKind::AR ? static_cast<int>(fit) : -1;
                FamilyFitter fitter(cw, config.p, h, subset, config);
                for (int e = 0; e < 4; ++e) {
                    const Need& need = table.need[mrow][e];
                    if (!need.any()) continue;
                    const Estimator est = static_cast<Estimator>(e);

                    Eigen::MatrixXd individual;
                    std::vector<FitStats> stats;
                    const bool ok = est == Estimator::OLS
                                        ? fitter.least_squares(individual, stats)
                                        : fitter.penalized(to_penalty(est), individual, stats);

                    Eigen::RowVectorXd fc_row, nofc_row;
                    const Eigen::Index q_eq = mk == ModelKind::AR ? 1 : q;
                    bool fell_back = false;
                    if (ok) {
                        emit(individual, stats, need, config, q_eq, fc_row, nofc_row, fell_back);
                    } else {
                        // degenerate or unestimable: predict the window mean
                        fell_back = true;
                        fc_row = Eigen::RowVectorXd::Zero(q_eq);
                        nofc_row = Eigen::RowVectorXd::Zero(q_eq);
                    }
                    if (fell_back) {
                        MethodSpec spec{mk, est, need.fc};
                        warn("null forecast (window mean) for " + origin_tag(spec));
                    }

                    auto store = [&](int idx, const Eigen::RowVectorXd& row) {
                        if (idx < 0) return;
                        Eigen::MatrixXd& fmat =
                            report.horizons[task.h_idx].forecasts[static_cast<std::size_t>(idx)];
                        if (mk == ModelKind::AR)
                            fmat(task.row, fit) = row(0) + mu(fit);
                        else
                            fmat.row(task.row) = row + mu;
                    };
                    if (need.fc) store(need.fc_idx, fc_row);
                    if (need.nofc) store(need.nofc_idx, nofc_row);
                }
            }
        }
    };

    unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                            : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(
                                                  tasks.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t id = next.fetch_add(1);
            if (id >= tasks.size()) break;
            try {
                run_task(id);
            } catch (...) {
                task_errors[id] = std::current_exception();
            }
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& err : task_errors)
        if (err) std::rethrow_exception(err);
    for (auto& wl : task_warnings)
        for (auto& w : wl) report.warnings.push_back(std::move(w));

    // errors and summary metrics
    const std::size_t M = config.methods.size();
    const std::size_t H = config.horizons.size();
    report.afe.assign(M, Eigen::MatrixXd::Constant(q, static_cast<Eigen::Index>(H), kNaN));
    report.mafe =
        Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(H), kNaN);
    for (std::size_t k = 0; k < H; ++k) {
        auto& block = report.horizons[k];
        bool sigma_ok = block.sigmas.size() > 0 && block.sigmas.minCoeff() > 0;
        if (!sigma_ok && block.sigmas.size() > 0)
            report.warnings.push_back("zero sigma at horizon " + std::to_string(block.h) +
                                      "; MAFE reported as NaN");
        for (std::size_t m = 0; m < M; ++m) {
            block.errors[m] = block.actuals - block.forecasts[m];
            for (Eigen::Index i = 0; i < q; ++i)
                report.afe[m](i, static_cast<Eigen::Index>(k)) = afe_mean(block.errors[m].col(i));
            if (sigma_ok)
                report.mafe(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) =
                    mafe_mean(block.errors[m], block.sigmas);
        }
    }
    return report;
}

}  // namespace lassovar
