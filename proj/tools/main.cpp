// lassovar: sparse AR/VAR forecasting of log-realized variance panels.
// Subcommands: ingest, fit, backtest, simulate, rerun. Every run writes a
// config.json snapshot; `rerun --config <snapshot>` reproduces the outputs
// byte-identically (output directory and thread count are runtime knobs and
// are not part of the snapshot).
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lassovar/backtest.hpp"
#include "lassovar/report.hpp"
#include "lassovar/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace lassovar;

namespace {

// thrown for bad inputs/usage (exit 2); other exceptions exit 1
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IngestOpts {
    std::string input;
    std::string out;
    std::string frequency = "auto";  // auto|daily|monthly
    std::vector<std::string> schema;
};

struct FitOpts {
    std::string panel;
    std::string out;
    std::string model = "ar";          // ar|var
    std::string estimator = "all";     // lasso|hierarchical|ordered|all
    std::string scheme = "bic";        // bic|equal|mse
    int p = 36;
    int L = 20;
    int h = 1;
};

struct BacktestOpts {
    std::string panel;
    std::string out;
    std::vector<int> horizons = {1, 2, 3, 6};
    std::string window = "expanding";  // expanding|rolling
    int S = 0;                         // rolling window size
    int start = 0;                     // 0 -> floor(T/2)
    int p = 36;
    int L = 20;
    std::string scheme = "bic";
    std::vector<std::string> methods = {"all"};
    int threads = 0;
};

struct SimulateOpts {
    std::string out;
    int T = 300;
    unsigned long long seed = 7;
    int q = 1;
    std::vector<double> phi;  // diagonal coefficient per lag
    std::string coef_file;    // JSON lag-major list of q x q matrices
    double noise_sd = 1.0;
    int burn_in = 200;
    std::vector<double> mean_offset;
};

void ensure_out_dir(const std::string& out) {
    if (out.empty()) throw InputError("output directory must not be empty");
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw InputError("cannot create output directory " + out + ": " + ec.message());
}

void write_config(const std::string& out, const std::string& command, const ordered_json& options) {
    ordered_json snap;
    snap["command"] = command;
    snap["options"] = options;
    write_file(out + "/config.json", snap.dump(2) + "\n");
}

WeightScheme parse_scheme(const std::string& s) {
    if (s == "bic") return WeightScheme::BIC;
    if (s == "equal") return WeightScheme::Equal;
    if (s == "mse") return WeightScheme::MSE;
    throw InputError("unknown weight scheme '" + s + "' (expected bic|equal|mse)");
}

std::vector<Estimator> parse_estimators(const std::string& s) {
    if (s == "all") return {Estimator::Lasso, Estimator::Hierarchical, Estimator::Ordered};
    if (s == "lasso") return {Estimator::Lasso};
    if (s == "hierarchical") return {Estimator::Hierarchical};
    if (s == "ordered") return {Estimator::Ordered};
    throw InputError("unknown estimator '" + s + "' (expected lasso|hierarchical|ordered|all)");
}

std::vector<MethodSpec> parse_methods(const std::vector<std::string>& labels) {
    const auto full = all_methods();
    if (labels.size() == 1 && labels[0] == "all") return full;
    std::vector<MethodSpec> out;
    for (const auto& label : labels) {
        bool found = false;
        for (const auto& m : full)
            if (m.label() == label) {
                out.push_back(m);
                found = true;
                break;
            }
        if (!found) throw InputError("unknown method '" + label + "' (e.g. var_lasso_fc)");
    }
    return out;
}

TimeSeriesPanel load_panel_or_die(const std::string& dir) {
    try {
        return load_panel_artifact(dir);
    } catch (const std::exception& e) {
        throw InputError(std::string("cannot load panel artifact: ") + e.what());
    }
}

// ---- ingest ----------------------------------------------------------------

int cmd_ingest(const IngestOpts& o) {
    ensure_out_dir(o.out);
    RawPanel raw;
    try {
        raw = ingest_csv(o.input, o.schema);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    if (o.frequency == "daily" && raw.frequency != Frequency::Daily)
        throw InputError("input is monthly but --frequency daily was requested");
    if (o.frequency == "monthly" && raw.frequency != Frequency::Monthly)
        throw InputError("input is daily but --frequency monthly was requested");

    std::vector<std::string> warnings;
    RawPanel monthly = raw.frequency == Frequency::Daily ? aggregate_monthly(raw, &warnings) : raw;
    const TimeSeriesPanel panel = log_center(monthly);
    const Descriptives d = descriptives(panel);

    write_panel_csv(o.out + "/panel.csv", panel);
    write_means_csv(o.out + "/means.csv", panel);
    write_descriptives_csv(o.out + "/descriptives.csv", d);
    ordered_json options;
    options["input"] = o.input;
    options["frequency"] = o.frequency;
    options["schema"] = o.schema;
    write_config(o.out, "ingest", options);

    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "ingested " << panel.T() << " months x " << panel.q() << " series ("
              << raw.rows_dropped << " input rows dropped) -> " << o.out << '\n';
    return 0;
}

// ---- fit -------------------------------------------------------------------

void write_path_stats_csv(const std::string& path, const std::vector<std::string>& row_labels,
                          const std::vector<const LambdaPath*>& paths,
                          const std::vector<const PathSummary*>& summaries) {
    std::ostringstream out;
    out << "fit,index,param,loss,df,valid,bic,weight\n";
    for (std::size_t r = 0; r < paths.size(); ++r) {
        const auto& pts = paths[r]->points;
        for (std::size_t m = 0; m < pts.size(); ++m) {
            const auto& st = pts[m].stats;
            out << row_labels[r] << ',' << m << ',' << format_double(pts[m].param) << ','
                << format_double(st.loss) << ',' << st.df << ',' << (st.valid ? 1 : 0) << ','
                << (st.valid ? format_double(st.bic) : "") << ','
                << format_double(summaries[r]->weights(static_cast<Eigen::Index>(m))) << '\n';
        }
    }
    write_file(path, out.str());
}

int cmd_fit(const FitOpts& o) {
    if (o.model != "ar" && o.model != "var") throw InputError("--model must be ar or var");
    const std::vector<Estimator> ests = parse_estimators(o.estimator);
    const WeightScheme scheme = parse_scheme(o.scheme);
    const TimeSeriesPanel panel = load_panel_or_die(o.panel);
    ensure_out_dir(o.out);
    SolverConfig solver;

    if (o.model == "ar") {
        const Eigen::Index q = panel.q();
        // series x (p, weighted BIC) per estimator
        Eigen::MatrixXd lengths(q, static_cast<Eigen::Index>(2 * ests.size()));
        std::vector<std::string> columns;
        std::vector<LambdaPath> flat_paths;
        std::vector<PathSummary> flat_summaries;
        std::vector<std::string> flat_labels;
        for (std::size_t e = 0; e < ests.size(); ++e) {
            const PenaltyKind kind = to_penalty(ests[e]);
            columns.push_back(std::string(estimator_name(ests[e])) + "_p");
            columns.push_back(std::string(estimator_name(ests[e])) + "_bic");
            for (Eigen::Index i = 0; i < q; ++i) {
                const LagDesign design = build_design(panel.values, o.p, o.h, static_cast<int>(i));
                const LambdaGrid grid = build_grid(design, kind, o.L);
                LambdaPath path = fit_path(design, kind, grid, solver);
                path.estimator = ests[e];
                PathSummary s = summarize_path(path, scheme);
                lengths(i, static_cast<Eigen::Index>(2 * e)) = s.weighted_lag_lengths(0, 0);
                double wbic = 0.0;
                for (std::size_t m = 0; m < s.stats.size(); ++m)
                    if (s.stats[m].valid)
                        wbic += s.weights(static_cast<Eigen::Index>(m)) * s.stats[m].bic;
                lengths(i, static_cast<Eigen::Index>(2 * e + 1)) = wbic;
                flat_labels.push_back(std::string(estimator_name(ests[e])) + ":" +
                                      panel.names[static_cast<std::size_t>(i)]);
                flat_paths.push_back(std::move(path));
                flat_summaries.push_back(std::move(s));
            }
        }
        write_lag_lengths_csv(o.out + "/lag_lengths.csv", panel.names, columns, lengths);
        std::vector<const LambdaPath*> pp;
        std::vector<const PathSummary*> sp;
        for (std::size_t r = 0; r < flat_paths.size(); ++r) {
            pp.push_back(&flat_paths[r]);
            sp.push_back(&flat_summaries[r]);
        }
        write_path_stats_csv(o.out + "/path_stats.csv", flat_labels, pp, sp);
        std::cout << "fitted " << ests.size() << " estimator path(s) per series -> " << o.out
                  << '\n';
    } else {
        const LagDesign design = build_design(panel.values, o.p, o.h, -1);
        const DesignGram dg = make_design_gram(design);
        std::vector<LambdaPath> paths;
        std::vector<PathSummary> summaries;
        std::vector<std::string> labels;
        for (Estimator est : ests) {
            const PenaltyKind kind = to_penalty(est);
            const LambdaGrid grid = build_grid(design, kind, o.L);
            LambdaPath path = fit_path(design, dg, kind, grid, solver);
            path.estimator = est;
            PathSummary s = summarize_path(path, scheme);
            write_lag_matrix_csv(o.out + "/lag_matrix_" + estimator_name(est) + ".csv",
                                 panel.names, s.weighted_lag_lengths);
            labels.push_back(estimator_name(est));
            paths.push_back(std::move(path));
            summaries.push_back(std::move(s));
        }
        std::vector<const LambdaPath*> pp;
        std::vector<const PathSummary*> sp;
        for (std::size_t r = 0; r < paths.size(); ++r) {
            pp.push_back(&paths[r]);
            sp.push_back(&summaries[r]);
        }
        write_path_stats_csv(o.out + "/path_stats.csv", labels, pp, sp);
        std::cout << "fitted " << ests.size() << " system path(s) -> " << o.out << '\n';
    }

    ordered_json options;
    options["model"] = o.model;
    options["estimator"] = o.estimator;
    options["scheme"] = o.scheme;
    options["p"] = o.p;
    options["L"] = o.L;
    options["h"] = o.h;
    options["panel"] = o.panel;
    write_config(o.out, "fit", options);
    return 0;
}

// ---- backtest ----------------------------------------------------------------

int cmd_backtest(const BacktestOpts& o) {
    const TimeSeriesPanel panel = load_panel_or_die(o.panel);
    ensure_out_dir(o.out);

    BacktestConfig config;
    config.horizons = o.horizons;
    if (o.window == "rolling") {
        if (o.S < 1) throw InputError("--window rolling requires --S > 0");
        config.window.kind = WindowSpec::Kind::Rolling;
        config.window.size = o.S;
    } else if (o.window == "expanding") {
        config.window.kind = WindowSpec::Kind::Expanding;
    } else {
        throw InputError("--window must be expanding or rolling");
    }
    config.start = o.start;
    config.p = o.p;
    config.L = o.L;
    config.scheme = parse_scheme(o.scheme);
    config.methods = parse_methods(o.methods);
    config.threads = o.threads;

    BacktestReport report;
    try {
        report = run_backtest(panel, config);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }

    write_afe_csv(o.out + "/afe.csv", report);
    write_mafe_csv(o.out + "/mafe.csv", report);
    write_audit_jsonl(o.out + "/audit.jsonl", report, config);

    ordered_json options;
    options["panel"] = o.panel;
    options["horizons"] = o.horizons;
    options["window"] = o.window;
    options["S"] = o.S;
    options["start"] = o.start;
    options["p"] = o.p;
    options["L"] = o.L;
    options["scheme"] = o.scheme;
    options["methods"] = o.methods;
    write_config(o.out, "backtest", options);

    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "backtested " << report.methods.size() << " methods over "
              << report.horizons.size() << " horizon(s), " << report.skipped_origins
              << " origin(s) skipped -> " << o.out << '\n';
    return 0;
}

// ---- simulate ----------------------------------------------------------------

std::vector<Eigen::MatrixXd> coef_from_options(const SimulateOpts& o) {
    if (!o.coef_file.empty()) {
        ordered_json j;
        try {
            j = ordered_json::parse(read_file(o.coef_file));
        } catch (const std::exception& e) {
            throw InputError(std::string("cannot parse --coef-file: ") + e.what());
        }
        if (!j.is_array() || j.empty())
            throw InputError("--coef-file must hold a nonempty array of q x q matrices");
        std::vector<Eigen::MatrixXd> coef;
        for (const auto& lag : j) {
            if (!lag.is_array() || lag.empty()) throw InputError("--coef-file: malformed matrix");
            const Eigen::Index q = static_cast<Eigen::Index>(lag.size());
            Eigen::MatrixXd A(q, q);
            for (Eigen::Index r = 0; r < q; ++r) {
                const auto& row = lag[static_cast<std::size_t>(r)];
                if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != q)
                    throw InputError("--coef-file: matrices must be square");
                for (Eigen::Index c = 0; c < q; ++c)
                    A(r, c) = row[static_cast<std::size_t>(c)].get<double>();
            }
            coef.push_back(std::move(A));
        }
        return coef;
    }
    if (o.phi.empty()) throw InputError("either --phi or --coef-file is required");
    if (o.q < 1) throw InputError("--q must be >= 1");
    std::vector<Eigen::MatrixXd> coef;
    for (double f : o.phi)
        coef.push_back(f * Eigen::MatrixXd::Identity(o.q, o.q));
    return coef;
}

int cmd_simulate(const SimulateOpts& o) {
    SimSpec spec;
    spec.T = o.T;
    spec.seed = o.seed;
    spec.coef = coef_from_options(o);
    spec.noise_sd = o.noise_sd;
    spec.burn_in = o.burn_in;
    if (!o.mean_offset.empty()) {
        spec.mean_offset = Eigen::Map<const Eigen::VectorXd>(
            o.mean_offset.data(), static_cast<Eigen::Index>(o.mean_offset.size()));
    }

    Eigen::MatrixXd sample;
    try {
        sample = simulate_var(spec);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const TimeSeriesPanel panel = simulated_panel(sample);
    ensure_out_dir(o.out);
    write_panel_csv(o.out + "/panel.csv", panel);
    write_means_csv(o.out + "/means.csv", panel);

    ordered_json truth;
    truth["T"] = spec.T;
    truth["seed"] = spec.seed;
    truth["q"] = spec.coef[0].rows();
    truth["p"] = spec.coef.size();
    truth["noise_sd"] = spec.noise_sd;
    truth["burn_in"] = spec.burn_in;
    truth["spectral_radius"] = companion_spectral_radius(spec.coef);
    ordered_json coef = ordered_json::array();
    for (const auto& A : spec.coef) {
        ordered_json mat = ordered_json::array();
        for (Eigen::Index r = 0; r < A.rows(); ++r)
            mat.push_back(std::vector<double>(A.row(r).begin(), A.row(r).end()));
        coef.push_back(std::move(mat));
    }
    truth["coef"] = std::move(coef);
    write_file(o.out + "/truth.json", truth.dump(2) + "\n");

    ordered_json options;
    options["T"] = o.T;
    options["seed"] = o.seed;
    options["q"] = o.q;
    options["phi"] = o.phi;
    options["coef_file"] = o.coef_file;
    options["noise_sd"] = o.noise_sd;
    options["burn_in"] = o.burn_in;
    options["mean_offset"] = o.mean_offset;
    write_config(o.out, "simulate", options);

    std::cout << "simulated " << panel.T() << " x " << panel.q() << " panel -> " << o.out << '\n';
    return 0;
}

// ---- rerun -------------------------------------------------------------------

template <typename T>
void from_snapshot(const ordered_json& j, const char* key, T& value) {
    if (!j.contains(key)) throw InputError(std::string("config snapshot missing key ") + key);
    value = j.at(key).get<T>();
}

int cmd_rerun(const std::string& config_path, const std::string& out, int threads) {
    ordered_json snap;
    try {
        snap = ordered_json::parse(read_file(config_path));
    } catch (const std::exception& e) {
        throw InputError(std::string("cannot read config snapshot: ") + e.what());
    }
    std::string command;
    from_snapshot(snap, "command", command);
    if (!snap.contains("options")) throw InputError("config snapshot missing options");
    const ordered_json& j = snap["options"];
    if (command == "ingest") {
        IngestOpts o;
        o.out = out;
        from_snapshot(j, "input", o.input);
        from_snapshot(j, "frequency", o.frequency);
        from_snapshot(j, "schema", o.schema);
        return cmd_ingest(o);
    }
    if (command == "fit") {
        FitOpts o;
        o.out = out;
        from_snapshot(j, "model", o.model);
        from_snapshot(j, "estimator", o.estimator);
        from_snapshot(j, "scheme", o.scheme);
        from_snapshot(j, "p", o.p);
        from_snapshot(j, "L", o.L);
        from_snapshot(j, "h", o.h);
        from_snapshot(j, "panel", o.panel);
        return cmd_fit(o);
    }
    if (command == "backtest") {
        BacktestOpts o;
        o.out = out;
        o.threads = threads;
        from_snapshot(j, "panel", o.panel);
        from_snapshot(j, "horizons", o.horizons);
        from_snapshot(j, "window", o.window);
        from_snapshot(j, "S", o.S);
        from_snapshot(j, "start", o.start);
        from_snapshot(j, "p", o.p);
        from_snapshot(j, "L", o.L);
        from_snapshot(j, "scheme", o.scheme);
        from_snapshot(j, "methods", o.methods);
        return cmd_backtest(o);
    }
    if (command == "simulate") {
        SimulateOpts o;
        o.out = out;
        from_snapshot(j, "T", o.T);
        from_snapshot(j, "seed", o.seed);
        from_snapshot(j, "q", o.q);
        from_snapshot(j, "phi", o.phi);
        from_snapshot(j, "coef_file", o.coef_file);
        from_snapshot(j, "noise_sd", o.noise_sd);
        from_snapshot(j, "burn_in", o.burn_in);
        from_snapshot(j, "mean_offset", o.mean_offset);
        return cmd_simulate(o);
    }
    throw InputError("config snapshot names unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse AR/VAR forecasting for log-realized-variance panels"};
    app.require_subcommand(1);

    IngestOpts ing;
    auto* c_ing = app.add_subcommand("ingest", "CSV -> centered monthly log panel + descriptives");
    c_ing->add_option("--input", ing.input, "input CSV (date,<series...>)")
        ->required()
        ->envname("LASSOVAR_INGEST_INPUT");
    c_ing->add_option("--out", ing.out, "output directory")
        ->required()
        ->envname("LASSOVAR_INGEST_OUT");
    c_ing->add_option("--frequency", ing.frequency, "auto|daily|monthly (monthly skips aggregation)")
        ->check(CLI::IsMember({"auto", "daily", "monthly"}))
        ->envname("LASSOVAR_INGEST_FREQUENCY");
    c_ing->add_option("--schema", ing.schema, "series subset/order, comma separated")
        ->delimiter(',')
        ->envname("LASSOVAR_INGEST_SCHEMA");

    FitOpts fit;
    auto* c_fit = app.add_subcommand("fit", "full-sample penalized paths and lag lengths");
    c_fit->add_option("--panel", fit.panel, "panel artifact directory (from ingest/simulate)")
        ->required()
        ->envname("LASSOVAR_FIT_PANEL");
    c_fit->add_option("--out", fit.out, "output directory")
        ->required()
        ->envname("LASSOVAR_FIT_OUT");
    c_fit->add_option("--model", fit.model, "ar|var")
        ->check(CLI::IsMember({"ar", "var"}))
        ->envname("LASSOVAR_FIT_MODEL");
    c_fit->add_option("--estimator", fit.estimator, "lasso|hierarchical|ordered|all")
        ->envname("LASSOVAR_FIT_ESTIMATOR");
    c_fit->add_option("--scheme", fit.scheme, "bic|equal|mse")
        ->envname("LASSOVAR_FIT_SCHEME");
    c_fit->add_option("--p", fit.p, "maximum lag order")->envname("LASSOVAR_FIT_P");
    c_fit->add_option("--L", fit.L, "grid size")->envname("LASSOVAR_FIT_L");
    c_fit->add_option("--horizon", fit.h, "forecast horizon of the direct design")
        ->envname("LASSOVAR_FIT_HORIZON");

    BacktestOpts bt;
    auto* c_bt = app.add_subcommand("backtest", "out-of-sample AFE/MAFE evaluation");
    c_bt->add_option("--panel", bt.panel, "panel artifact directory")
        ->required()
        ->envname("LASSOVAR_BACKTEST_PANEL");
    c_bt->add_option("--out", bt.out, "output directory")
        ->required()
        ->envname("LASSOVAR_BACKTEST_OUT");
    c_bt->add_option("--horizons", bt.horizons, "forecast horizons, comma separated")
        ->delimiter(',')
        ->envname("LASSOVAR_BACKTEST_HORIZONS");
    c_bt->add_option("--window", bt.window, "expanding|rolling")
        ->check(CLI::IsMember({"expanding", "rolling"}))
        ->envname("LASSOVAR_BACKTEST_WINDOW");
    c_bt->add_option("--S", bt.S, "rolling window size")->envname("LASSOVAR_BACKTEST_S");
    c_bt->add_option("--start", bt.start, "first forecast origin (0 -> floor(T/2))")
        ->envname("LASSOVAR_BACKTEST_START");
    c_bt->add_option("--p", bt.p, "maximum lag order")->envname("LASSOVAR_BACKTEST_P");
    c_bt->add_option("--L", bt.L, "grid size")->envname("LASSOVAR_BACKTEST_L");
    c_bt->add_option("--scheme", bt.scheme, "bic|equal|mse")->envname("LASSOVAR_BACKTEST_SCHEME");
    c_bt->add_option("--methods", bt.methods, "method labels or 'all' (e.g. var_lasso_fc)")
        ->delimiter(',')
        ->envname("LASSOVAR_BACKTEST_METHODS");
    c_bt->add_option("--threads", bt.threads, "worker threads (0 -> hardware)")
        ->envname("LASSOVAR_BACKTEST_THREADS");

    SimulateOpts sim;
    auto* c_sim = app.add_subcommand("simulate", "synthetic sparse VAR panel with stored truth");
    c_sim->add_option("--out", sim.out, "output directory")
        ->required()
        ->envname("LASSOVAR_SIMULATE_OUT");
    c_sim->add_option("--T", sim.T, "observations")->envname("LASSOVAR_SIMULATE_T");
    c_sim->add_option("--seed", sim.seed, "RNG seed")->envname("LASSOVAR_SIMULATE_SEED");
    c_sim->add_option("--q", sim.q, "series count for --phi shorthand")
        ->envname("LASSOVAR_SIMULATE_Q");
    c_sim->add_option("--phi", sim.phi, "diagonal AR coefficients per lag, comma separated")
        ->delimiter(',')
        ->envname("LASSOVAR_SIMULATE_PHI");
    c_sim->add_option("--coef-file", sim.coef_file, "JSON array of q x q lag matrices")
        ->envname("LASSOVAR_SIMULATE_COEF_FILE");
    c_sim->add_option("--noise-sd", sim.noise_sd, "innovation standard deviation")
        ->envname("LASSOVAR_SIMULATE_NOISE_SD");
    c_sim->add_option("--burn-in", sim.burn_in, "discarded warmup steps")
        ->envname("LASSOVAR_SIMULATE_BURN_IN");
    c_sim->add_option("--mean-offset", sim.mean_offset, "per-series level, comma separated")
        ->delimiter(',')
        ->envname("LASSOVAR_SIMULATE_MEAN_OFFSET");

    std::string rerun_config, rerun_out;
    int rerun_threads = 0;
    auto* c_rr = app.add_subcommand("rerun", "reproduce a run from its config.json snapshot");
    c_rr->add_option("--config", rerun_config, "config.json from a previous run")
        ->required()
        ->envname("LASSOVAR_RERUN_CONFIG");
    c_rr->add_option("--out", rerun_out, "output directory")
        ->required()
        ->envname("LASSOVAR_RERUN_OUT");
    c_rr->add_option("--threads", rerun_threads, "worker threads (0 -> hardware)")
        ->envname("LASSOVAR_RERUN_THREADS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_ing) return cmd_ingest(ing);
        if (*c_fit) return cmd_fit(fit);
        if (*c_bt) return cmd_backtest(bt);
        if (*c_sim) return cmd_simulate(sim);
        if (*c_rr) return cmd_rerun(rerun_config, rerun_out, rerun_threads);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
