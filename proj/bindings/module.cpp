// Python bindings for the core operations: proximal operators, single-equation
// solves, lambda paths, simulation and the backtest driver. Thin wrappers only;
// all numerics live in the C++ library.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "lassovar/backtest.hpp"
#include "lassovar/report.hpp"
#include "lassovar/simulate.hpp"

namespace py = pybind11;
using namespace lassovar;

namespace {

PenaltyKind parse_kind(const std::string& kind) {
    if (kind == "lasso") return PenaltyKind::Lasso;
    if (kind == "hierarchical") return PenaltyKind::Hierarchical;
    if (kind == "ordered") return PenaltyKind::Ordered;
    throw std::invalid_argument("unknown penalty '" + kind + "'");
}

WeightScheme parse_scheme(const std::string& scheme) {
    if (scheme == "bic") return WeightScheme::BIC;
    if (scheme == "equal") return WeightScheme::Equal;
    if (scheme == "mse") return WeightScheme::MSE;
    throw std::invalid_argument("unknown weight scheme '" + scheme + "'");
}

GroupLayout layout_of(Eigen::Index q_effective, Eigen::Index p) {
    if (q_effective < 1 || p < 1) throw std::invalid_argument("layout sizes must be >= 1");
    return GroupLayout{q_effective, p};
}

SolverConfig config_of(int max_iterations, double tolerance, double objective_tolerance) {
    SolverConfig c;
    c.max_iterations = max_iterations;
    c.tolerance = tolerance;
    c.objective_tolerance = objective_tolerance;
    return c;
}

py::dict stats_dict(const FitStats& s) {
    py::dict d;
    d["loss"] = s.loss;
    d["df"] = s.df;
    d["bic"] = s.bic;
    d["n"] = s.n;
    d["valid"] = s.valid;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "sparse AR/VAR estimation and forecasting core";

    m.def(
        "pava_nonincreasing",
        [](Eigen::VectorXd v) {
            pava_nonincreasing(v);
            return v;
        },
        py::arg("v"), "Least-squares non-increasing fit (pool adjacent violators).");

    m.def(
        "penalty_value",
        [](const std::string& kind, const Eigen::VectorXd& beta, Eigen::Index q_effective,
           Eigen::Index p) {
            return penalty_value(parse_kind(kind), beta,
                                 layout_of(q_effective, p == 0 ? beta.size() : p));
        },
        py::arg("kind"), py::arg("beta"), py::arg("q_effective") = 1, py::arg("p") = 0,
        "Penalty term without the lambda factor; p = 0 means one block of len(beta).");

    m.def("prox_lasso", &prox_lasso, py::arg("z"), py::arg("t"));

    m.def(
        "prox_hierarchical",
        [](const Eigen::VectorXd& z, double t, Eigen::Index q_effective, Eigen::Index p) {
            return prox_hierarchical(z, t, layout_of(q_effective, p == 0 ? z.size() : p));
        },
        py::arg("z"), py::arg("t"), py::arg("q_effective") = 1, py::arg("p") = 0);

    m.def(
        "prox_ordered",
        [](const Eigen::VectorXd& z, double t, Eigen::Index q_effective, Eigen::Index p) {
            const OrderedProx r =
                prox_ordered(z, t, layout_of(q_effective, p == 0 ? z.size() : p));
            py::dict d;
            d["beta"] = r.beta;
            d["beta_plus"] = r.beta_plus;
            d["beta_minus"] = r.beta_minus;
            return d;
        },
        py::arg("z"), py::arg("t"), py::arg("q_effective") = 1, py::arg("p") = 0);

    m.def(
        "minimal_split",
        [](const Eigen::VectorXd& beta, Eigen::Index q_effective, Eigen::Index p) {
            const OrderedProx r =
                minimal_split(beta, layout_of(q_effective, p == 0 ? beta.size() : p));
            py::dict d;
            d["beta"] = r.beta;
            d["beta_plus"] = r.beta_plus;
            d["beta_minus"] = r.beta_minus;
            return d;
        },
        py::arg("beta"), py::arg("q_effective") = 1, py::arg("p") = 0);

    m.def(
        "build_design",
        [](const Eigen::MatrixXd& centered, int p, int h, int subset) {
            const LagDesign d = build_design(centered, p, h, subset);
            py::dict out;
            out["X"] = d.X;
            out["Y"] = d.Y;
            out["n"] = d.n;
            out["p"] = d.p;
            out["h"] = d.h;
            out["q_effective"] = d.q_effective;
            return out;
        },
        py::arg("centered"), py::arg("p"), py::arg("h") = 1, py::arg("subset") = -1,
        "Direct h-step lag design; subset >= 0 restricts to one series (AR).");

    m.def(
        "forecast_row",
        [](const Eigen::MatrixXd& centered, int p, int subset) {
            return forecast_row(centered, p, subset);
        },
        py::arg("centered"), py::arg("p"), py::arg("subset") = -1);

    m.def(
        "lambda_max",
        [](const std::string& kind, const Eigen::MatrixXd& centered, int p, int h, int subset) {
            return lambda_max(parse_kind(kind), build_design(centered, p, h, subset));
        },
        py::arg("kind"), py::arg("centered"), py::arg("p"), py::arg("h") = 1,
        py::arg("subset") = -1);

    m.def("bic", &bic, py::arg("loss"), py::arg("df"), py::arg("n"));

    m.def(
        "solve_equation",
        [](const Eigen::MatrixXd& centered, Eigen::Index equation, double lambda,
           const std::string& kind, int p, int h, int subset, int max_iterations,
           double tolerance, double objective_tolerance) {
            const LagDesign d = build_design(centered, p, h, subset);
            const SolveResult r =
                solve_equation(d, equation, lambda, parse_kind(kind),
                               config_of(max_iterations, tolerance, objective_tolerance));
            py::dict out;
            out["beta"] = r.beta;
            out["beta_plus"] = r.beta_plus;
            out["beta_minus"] = r.beta_minus;
            out["iterations"] = r.iterations;
            out["converged"] = r.converged;
            out["objective"] = r.objective;
            out["loss"] = r.loss;
            return out;
        },
        py::arg("centered"), py::arg("equation"), py::arg("lambda_"), py::arg("kind"),
        py::arg("p"), py::arg("h") = 1, py::arg("subset") = -1,
        py::arg("max_iterations") = 10000, py::arg("tolerance") = 1e-7,
        py::arg("objective_tolerance") = 1e-10);

    m.def(
        "fit_path",
        [](const Eigen::MatrixXd& centered, const std::string& kind, int p, int h, int subset,
           int L, const std::string& scheme) {
            const LagDesign d = build_design(centered, p, h, subset);
            const PenaltyKind pk = parse_kind(kind);
            const LambdaGrid grid = build_grid(d, pk, L);
            const LambdaPath path = fit_path(d, pk, grid, SolverConfig{});
            const PathSummary s = summarize_path(path, parse_scheme(scheme));
            py::list points;
            for (std::size_t i = 0; i < path.points.size(); ++i) {
                const auto& pt = path.points[i];
                py::dict row;
                row["param"] = pt.param;
                row["beta"] = pt.coef.beta;
                row["stats"] = stats_dict(pt.stats);
                points.append(row);
            }
            py::dict out;
            out["points"] = points;
            out["weights"] = s.weights;
            out["weighted_lag_lengths"] = s.weighted_lag_lengths;
            out["bic_argmin"] = s.bic_argmin;
            return out;
        },
        py::arg("centered"), py::arg("kind"), py::arg("p"), py::arg("h") = 1,
        py::arg("subset") = -1, py::arg("L") = 20, py::arg("scheme") = "bic");

    m.def(
        "simulate_var",
        [](int T, unsigned long long seed, const std::vector<Eigen::MatrixXd>& coef,
           double noise_sd, int burn_in, const std::vector<double>& mean_offset) {
            SimSpec spec;
            spec.T = T;
            spec.seed = seed;
            spec.coef = coef;
            spec.noise_sd = noise_sd;
            spec.burn_in = burn_in;
            if (!mean_offset.empty())
                spec.mean_offset = Eigen::Map<const Eigen::VectorXd>(
                    mean_offset.data(), static_cast<Eigen::Index>(mean_offset.size()));
            return simulate_var(spec);
        },
        py::arg("T"), py::arg("seed"), py::arg("coef"), py::arg("noise_sd") = 1.0,
        py::arg("burn_in") = 200, py::arg("mean_offset") = std::vector<double>{});

    m.def("companion_spectral_radius", &companion_spectral_radius, py::arg("coef"));

    m.def(
        "run_backtest",
        [](const Eigen::MatrixXd& uncentered_log, const std::vector<int>& horizons,
           const std::string& window, int S, int start, int p, int L, const std::string& scheme,
           const std::vector<std::string>& methods, int threads) {
            const TimeSeriesPanel panel = simulated_panel(uncentered_log);
            BacktestConfig config;
            config.horizons = horizons;
            if (window == "rolling") {
                config.window.kind = WindowSpec::Kind::Rolling;
                config.window.size = S;
            } else if (window != "expanding") {
                throw std::invalid_argument("window must be expanding or rolling");
            }
            config.start = start;
            config.p = p;
            config.L = L;
            config.scheme = parse_scheme(scheme);
            if (!(methods.size() == 1 && methods[0] == "all")) {
                std::vector<MethodSpec> specs;
                const auto full = all_methods();
                for (const auto& label : methods) {
                    bool found = false;
                    for (const auto& ms : full)
                        if (ms.label() == label) {
                            specs.push_back(ms);
                            found = true;
                            break;
                        }
                    if (!found) throw std::invalid_argument("unknown method '" + label + "'");
                }
                config.methods = specs;
            }
            config.threads = threads;
            const BacktestReport report = run_backtest(panel, config);
            py::dict out;
            py::list labels;
            for (const auto& ms : report.methods) labels.append(ms.label());
            out["methods"] = labels;
            out["mafe"] = report.mafe;
            py::list afe;
            for (const auto& a : report.afe) afe.append(a);
            out["afe"] = afe;
            py::list blocks;
            for (const auto& b : report.horizons) {
                py::dict blk;
                blk["h"] = b.h;
                blk["origins"] = b.origins;
                blk["actuals"] = b.actuals;
                blk["sigmas"] = b.sigmas;
                py::list fc;
                for (const auto& f : b.forecasts) fc.append(f);
                blk["forecasts"] = fc;
                blocks.append(blk);
            }
            out["horizons"] = blocks;
            out["skipped_origins"] = report.skipped_origins;
            out["warnings"] = report.warnings;
            return out;
        },
        py::arg("uncentered_log"), py::arg("horizons") = std::vector<int>{1, 2, 3, 6},
        py::arg("window") = "expanding", py::arg("S") = 0, py::arg("start") = 0,
        py::arg("p") = 36, py::arg("L") = 20, py::arg("scheme") = "bic",
        py::arg("methods") = std::vector<std::string>{"all"}, py::arg("threads") = 1);
}
