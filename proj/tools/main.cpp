// Batch front end: ingest a pulse-load event series, estimate clustering and
// arrival-rate structure, and extrapolate maximum-load statistics to
// arbitrary horizons. Subcommands: report, theta, cox, predict, simulate.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 data error,
// 4 numerical failure. Every run is reproducible from (input, config, seed):
// repeated runs produce byte-identical outputs.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pulsemax/bayes_cdf.hpp"
#include "pulsemax/cox_process.hpp"
#include "pulsemax/dependence.hpp"
#include "pulsemax/errors.hpp"
#include "pulsemax/event_series.hpp"
#include "pulsemax/extremal_index.hpp"
#include "pulsemax/max_dist.hpp"
#include "pulsemax/random.hpp"
#include "pulsemax/series_io.hpp"
#include "pulsemax/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pulsemax;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Tracks files written under one command so a stage failure can remove
// partial outputs.
class OutputDir {
public:
    explicit OutputDir(const fs::path& dir) : dir_(dir) { fs::create_directories(dir_); }

    fs::path file(const std::string& name) {
        fs::path p = dir_ / name;
        written_.push_back(p);
        return p;
    }

    void discard() {
        for (const auto& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        written_.clear();
    }

    const std::vector<fs::path>& written() const { return written_; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

void write_text(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    if (!out) throw DataError("cannot write '" + p.string() + "'");
    out << body;
    if (!out) throw DataError("write failed for '" + p.string() + "'");
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("trailing characters in " + what + " '" + s + "'");
    return v;
}

// "start:stop:step" inclusive ladder
std::vector<double> parse_ladder(const std::string& s, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() != 3)
        throw std::invalid_argument(what + " must be start:stop:step, got '" + s + "'");
    const double start = parse_double(parts[0], what + " start");
    const double stop = parse_double(parts[1], what + " stop");
    const double step = parse_double(parts[2], what + " step");
    if (!(step > 0.0)) throw std::invalid_argument(what + " step must be positive");
    if (stop < start) throw std::invalid_argument(what + " stop must be >= start");
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-9 * step; v += step) out.push_back(v);
    return out;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& part : split(s, ','))
        if (!part.empty()) out.push_back(parse_double(part, what));
    if (out.empty()) throw std::invalid_argument(what + " list is empty");
    return out;
}

constexpr const char* kVarianceKernel =
    "2*var_intensity*(t*tau0 + tau0^2*expm1(-t/tau0))";
constexpr const char* kFluctuationParameter = "stationary_variance";

struct CommonConfig {
    std::string input;
    std::optional<double> trigger;
    std::string out = "out";
    std::uint64_t seed = 0;
};

struct ReportConfig : CommonConfig {
    std::string ladder = "100:175:5";
    int run_length_override = 0;  // 0 = derive from the scale of fluctuation
    int chi2_bins = 10;
    int max_lag = 500;
    std::string window_grid = "1:24:1";
    double stride = 0.5;
    double mc_window_hours = 24.0;
    std::size_t sims = 100000;
    std::string levels;      // defaults to the ladder
    std::string horizons = "1,365,730,3650,18250,27375";
    std::string theta_list;  // defaults to {1, fitted theta}
};

struct PredictConfig {
    double alpha = 0.0;
    double mode = 0.0;
    std::string horizons = "1,365,730,3650,18250,27375";
    std::string theta_list = "1,0.93,0.75,0.5";
    std::string out = "out";
};

struct SimulateConfig {
    std::string kind;
    std::size_t n = 1000;
    double a = 0.5;
    std::string weights = "1,1";
    std::string marginal = "frechet";
    double marginal_a = 0.0;
    double marginal_b = 1.0;
    double mu = 0.53;
    double sigma = 0.56;
    double tau0 = 19.4;
    double horizon_hours = 264.0;
    double dt = -1.0;
    std::string mark_kind = "iid";
    double mark_a = 0.5;
    std::uint64_t seed = 0;
    std::string out = "events.csv";
};

Marginal make_marginal(const std::string& name, double a, double b) {
    if (name == "frechet") return Marginal::unit_frechet();
    if (name == "gaussian") return Marginal::gaussian(a, b);
    if (name == "exponential") return Marginal::exponential(a > 0.0 ? a : 1.0);
    if (name == "uniform") return Marginal::uniform(a, b);
    throw std::invalid_argument("unknown marginal '" + name + "'");
}

// ---- pipeline stages shared between report/theta/cox ----

struct IngestResult {
    EventSeries series;
    double mean_interarrival = 0.0;
    ChiSquaredResult chi2;
};

IngestResult run_ingest(const CommonConfig& cfg, int chi2_bins, OutputDir& out) {
    std::vector<std::string> warnings;
    EventSeries series = load_events(cfg.input, cfg.trigger, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    const auto inter = interarrival_times(series);
    double mean = 0.0;
    for (double d : inter) mean += d;
    mean /= static_cast<double>(inter.size());
    const ChiSquaredResult chi2 = chi_squared_exponential_test(inter, chi2_bins);

    json summary = {
        {"n", series.size()},
        {"span_hours", series.observation_span},
        {"trigger", series.trigger_level},
        {"mean_interarrival_hours", mean},
        {"chi2", chi2.statistic},
        {"dof", chi2.degrees_of_freedom},
        {"significance", chi2.significance},
    };
    write_json(out.file("ingest_summary.json"), summary);
    return IngestResult{std::move(series), mean, chi2};
}

struct DependenceResult {
    double tau_c = 0.0;
    int r = 2;
};

DependenceResult run_dependence(const EventSeries& series, int max_lag_cfg,
                                int run_length_override, OutputDir& out) {
    const std::vector<double> mags = series.magnitudes();
    const int n = static_cast<int>(mags.size());
    const int max_lag = std::min(n - 1, max_lag_cfg);
    if (max_lag < 1) throw DataError("too few events for an autocorrelation estimate");
    const Acf acf = autocorrelation(mags, max_lag);
    std::vector<int> windows;
    for (int T = 2; T <= std::min(200, max_lag + 1); ++T) windows.push_back(T);
    const ScaleOfFluctuation sof = scale_of_fluctuation(acf, windows);

    std::string csv = "window,tau_c\n";
    for (const auto& [T, est] : sof.tau_c_by_window)
        csv += std::to_string(T) + "," + num(est) + "\n";
    write_text(out.file("tau_c_curve.csv"), csv);

    const int r =
        run_length_override >= 2 ? run_length_override : run_length(sof.converged_value);
    return DependenceResult{sof.converged_value, r};
}

ThetaFit run_theta_stage(const EventSeries& series, const std::string& ladder, int r,
                         OutputDir& out) {
    const std::vector<double> mags = series.magnitudes();
    const std::vector<double> thresholds = parse_ladder(ladder, "--ladder");
    std::vector<std::string> warnings;
    auto curve = runs_curve(mags, thresholds, r, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    // a rung below every observation pins q to 1 and carries no tail signal
    std::erase_if(curve, [&](const std::pair<double, double>& pt) {
        if (pt.first < 1.0) return false;
        std::cerr << "warning: a ladder rung sits below every observation, dropped\n";
        return true;
    });
    if (curve.size() < 4)
        throw DataError("only " + std::to_string(curve.size()) +
                        " usable ladder rungs; the bias fit needs at least 4");
    const ThetaFit fit = fit_theta(curve);

    std::string csv = "q,theta_hat,fitted\n";
    for (const auto& [q, th] : curve) {
        const double fitted = fit.theta + fit.beta1 * std::pow(q, fit.beta2);
        csv += num(q) + "," + num(th) + "," + num(fitted) + "\n";
    }
    write_text(out.file("theta_curve.csv"), csv);
    return fit;
}

struct CoxStageResult {
    CoxModel model;
    std::vector<MomentPoint> curve;
};

CoxStageResult run_cox_stage(const EventSeries& series, const std::string& window_grid,
                             double stride, OutputDir& out) {
    std::vector<double> grid = parse_ladder(window_grid, "--window-grid");
    std::vector<double> usable;
    for (double t : grid) {
        if (t <= series.observation_span)
            usable.push_back(t);
        else
            std::cerr << "warning: window " << t << " h exceeds the observation span, dropped\n";
    }
    if (usable.size() < 3)
        throw DataError("fewer than 3 usable window lengths for the arrival-model fit");
    const auto curve = empirical_mean_measure(series, usable, stride);
    const CoxModel model = fit_cox(curve);

    std::string csv = "t_hours,mean_hat,var_hat,fit_mean,fit_var\n";
    for (const auto& pt : curve) {
        const MeanMeasureMoments mm = mean_measure_moments(model, pt.t);
        csv += num(pt.t) + "," + num(pt.mean) + "," + num(pt.variance) + "," +
               num(mm.mean) + "," + num(mm.variance) + "\n";
    }
    write_text(out.file("cox_moments.csv"), csv);
    return CoxStageResult{model, curve};
}

json cox_json(const CoxModel& model) {
    return json{{"mu", model.mu},
                {"sigma", model.sigma},
                {"tau0_hours", model.tau0},
                {"mean_intensity", model.mean_intensity()},
                {"var_intensity", model.var_intensity()},
                {"variance_kernel", kVarianceKernel},
                {"fluctuation_parameter", kFluctuationParameter}};
}

json theta_json(const ThetaFit& fit) {
    return json{{"theta", fit.theta},
                {"beta1", fit.beta1},
                {"beta2", fit.beta2},
                {"sse", fit.sse},
                {"n_rungs", fit.points.size()}};
}

std::string horizon_table_csv(const GumbelModel& base, const std::vector<double>& thetas,
                              const std::vector<double>& horizons) {
    std::string csv = "horizon_days,theta,alpha,mode,mean,cov\n";
    for (double theta : thetas) {
        if (!(theta > 0.0) || theta > 1.0)
            throw std::invalid_argument("--theta-list entries must lie in (0,1]");
        const GumbelModel adjusted = apply_extremal_index(base, theta);
        for (double r : horizons) {
            const GumbelModel scaled = horizon_scale(adjusted, r);
            const SummaryStats stats = gumbel_summary(scaled);
            csv += num(r) + "," + num(theta) + "," + num(scaled.alpha_scale) + "," +
                   num(scaled.mode_u) + "," + num(stats.mean) + "," + num(stats.cov) + "\n";
        }
    }
    return csv;
}

json outputs_json(const OutputDir& out) {
    json files = json::array();
    for (const auto& p : out.written()) files.push_back(p.filename().string());
    return files;
}

// ---- commands ----

int cmd_report(const ReportConfig& cfg) {
    OutputDir out(cfg.out);
    std::string stage = "ingest";
    try {
        const IngestResult ingest = run_ingest(cfg, cfg.chi2_bins, out);
        const EventSeries& series = ingest.series;
        const std::vector<double> mags = series.magnitudes();

        stage = "dependence";
        const DependenceResult dep =
            run_dependence(series, cfg.max_lag, cfg.run_length_override, out);

        stage = "extremal-index";
        const ThetaFit theta_fit = run_theta_stage(series, cfg.ladder, dep.r, out);

        stage = "arrival-model";
        const CoxStageResult cox = run_cox_stage(series, cfg.window_grid, cfg.stride, out);

        stage = "level-distribution";
        const std::vector<double> levels = cfg.levels.empty()
                                               ? parse_ladder(cfg.ladder, "--ladder")
                                               : parse_list(cfg.levels, "--levels");
        RandomStream rng(cfg.seed);
        const int n = static_cast<int>(series.size());
        std::vector<std::pair<double, double>> tail_points;
        std::string level_csv = "level,p_hat,post_mean,post_cov,mc_cdf,mc_se\n";
        for (double level : levels) {
            const double p_hat = empirical_cdf(mags, level);
            const BetaPosterior post = posterior_params(n, p_hat, theta_fit.theta);
            const Moments mom = posterior_moments(post);
            const MaxCdfPoint mc =
                mc_max_cdf(cox.model, post, cfg.mc_window_hours, cfg.sims, rng, level);
            level_csv += num(level) + "," + num(p_hat) + "," + num(mom.mean) + "," +
                         num(mom.cov) + "," + num(mc.cdf) + "," + num(mc.mc_std_error) + "\n";
            if (mc.cdf > 0.0 && mc.cdf < 1.0) tail_points.emplace_back(level, mc.cdf);
        }
        write_text(out.file("level_cdf.csv"), level_csv);

        stage = "tail-fit";
        if (tail_points.size() < 2)
            throw DataError("fewer than 2 levels with Monte Carlo CDF inside (0,1)");
        const GumbelFit gumbel = gumbel_fit(tail_points, cfg.mc_window_hours / 24.0);
        const FrechetFit frechet = frechet_fit(tail_points);
        std::string plot_csv = "level,reduced_variate,fitted\n";
        for (const auto& [level, cdf] : tail_points) {
            const double y = -std::log(-std::log(cdf));
            const double fitted =
                gumbel.model.alpha_scale * (level - gumbel.model.mode_u);
            plot_csv += num(level) + "," + num(y) + "," + num(fitted) + "\n";
        }
        write_text(out.file("gumbel_plot.csv"), plot_csv);

        stage = "horizon-table";
        if (gumbel.model.horizon_days != 1.0)
            throw std::invalid_argument(
                "the horizon table needs a 24 h Monte Carlo window (--mc-window 24)");
        const std::vector<double> thetas =
            cfg.theta_list.empty() ? std::vector<double>{1.0, theta_fit.theta}
                                   : parse_list(cfg.theta_list, "--theta-list");
        const std::vector<double> horizons = parse_list(cfg.horizons, "--horizons");
        write_text(out.file("horizon_table.csv"),
                   horizon_table_csv(gumbel.model, thetas, horizons));

        stage = "manifest";
        json manifest = {
            {"command", "report"},
            {"input", cfg.input},
            {"seed", cfg.seed},
            {"n_events", series.size()},
            {"span_hours", series.observation_span},
            {"trigger", series.trigger_level},
            {"interarrival",
             {{"mean_hours", ingest.mean_interarrival},
              {"chi2", ingest.chi2.statistic},
              {"dof", ingest.chi2.degrees_of_freedom},
              {"significance", ingest.chi2.significance}}},
            {"scale_of_fluctuation", dep.tau_c},
            {"run_length", dep.r},
            {"theta_fit", theta_json(theta_fit)},
            {"cox_fit", cox_json(cox.model)},
            {"gumbel_fit",
             {{"alpha", gumbel.model.alpha_scale},
              {"mode", gumbel.model.mode_u},
              {"sse", gumbel.sse},
              {"horizon_days", gumbel.model.horizon_days}}},
            {"frechet_fit",
             {{"shape", frechet.model.shape},
              {"scale", frechet.model.scale},
              {"sse", frechet.sse}}},
            {"preferred_tail_fit", gumbel.sse <= frechet.sse ? "gumbel" : "frechet"},
            {"mc",
             {{"window_hours", cfg.mc_window_hours},
              {"sims", cfg.sims},
              {"dt_hours", cox.model.tau0 / 50.0}}},
        };
        manifest["outputs"] = outputs_json(out);
        write_json(out.file("manifest.json"), manifest);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "stage " << stage << " failed: " << e.what() << "\n";
        out.discard();
        throw;
    }
}

int cmd_theta(const ReportConfig& cfg) {
    OutputDir out(cfg.out);
    std::string stage = "ingest";
    try {
        const IngestResult ingest = run_ingest(cfg, cfg.chi2_bins, out);
        stage = "dependence";
        const DependenceResult dep =
            run_dependence(ingest.series, cfg.max_lag, cfg.run_length_override, out);
        stage = "extremal-index";
        const ThetaFit theta_fit = run_theta_stage(ingest.series, cfg.ladder, dep.r, out);
        stage = "manifest";
        json manifest = {
            {"command", "theta"},       {"input", cfg.input},
            {"n_events", ingest.series.size()}, {"scale_of_fluctuation", dep.tau_c},
            {"run_length", dep.r},      {"theta_fit", theta_json(theta_fit)},
        };
        manifest["outputs"] = outputs_json(out);
        write_json(out.file("manifest.json"), manifest);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "stage " << stage << " failed: " << e.what() << "\n";
        out.discard();
        throw;
    }
}

int cmd_cox(const ReportConfig& cfg) {
    OutputDir out(cfg.out);
    std::string stage = "ingest";
    try {
        const IngestResult ingest = run_ingest(cfg, cfg.chi2_bins, out);
        stage = "arrival-model";
        const CoxStageResult cox =
            run_cox_stage(ingest.series, cfg.window_grid, cfg.stride, out);
        stage = "manifest";
        json manifest = {
            {"command", "cox"},
            {"input", cfg.input},
            {"n_events", ingest.series.size()},
            {"cox_fit", cox_json(cox.model)},
        };
        manifest["outputs"] = outputs_json(out);
        write_json(out.file("manifest.json"), manifest);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "stage " << stage << " failed: " << e.what() << "\n";
        out.discard();
        throw;
    }
}

int cmd_predict(const PredictConfig& cfg) {
    OutputDir out(cfg.out);
    std::string stage = "horizon-table";
    try {
        if (!(cfg.alpha > 0.0)) throw std::invalid_argument("--alpha must be positive");
        const GumbelModel base{cfg.alpha, cfg.mode, 1.0, 1.0};
        const std::vector<double> thetas = parse_list(cfg.theta_list, "--theta-list");
        const std::vector<double> horizons = parse_list(cfg.horizons, "--horizons");
        write_text(out.file("horizon_table.csv"),
                   horizon_table_csv(base, thetas, horizons));
        stage = "manifest";
        json manifest = {
            {"command", "predict"},
            {"gumbel_base", {{"alpha", cfg.alpha}, {"mode", cfg.mode}}},
        };
        manifest["outputs"] = outputs_json(out);
        write_json(out.file("manifest.json"), manifest);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "stage " << stage << " failed: " << e.what() << "\n";
        out.discard();
        throw;
    }
}

int cmd_simulate(const SimulateConfig& cfg) {
    std::string stage = "simulate";
    const fs::path csv_path = cfg.out;
    fs::path manifest_path = csv_path;
    manifest_path.replace_extension(".manifest.json");
    try {
        if (csv_path.has_parent_path()) fs::create_directories(csv_path.parent_path());
        RandomStream rng(cfg.seed);
        EventSeries series;
        json params;
        double theta_true = 1.0;

        if (cfg.kind == "cox") {
            const CoxModel model{cfg.mu, cfg.sigma, cfg.tau0};
            if (!(cfg.tau0 > 0.0)) throw std::invalid_argument("--tau0 must be positive");
            MarkSpec marks;
            if (cfg.mark_kind == "iid") {
                marks.kind = MarkSpec::Kind::iid;
                marks.marginal = make_marginal(cfg.marginal, cfg.marginal_a, cfg.marginal_b);
            } else if (cfg.mark_kind == "max-ar") {
                marks.kind = MarkSpec::Kind::max_ar;
                marks.a = cfg.mark_a;
                theta_true = 1.0 - cfg.mark_a;
            } else {
                throw std::invalid_argument("--mark-kind must be iid or max-ar");
            }
            series = gen_cox_stream(model, cfg.horizon_hours, marks, rng, cfg.dt);
            params = {{"mu", cfg.mu},
                      {"sigma", cfg.sigma},
                      {"tau0_hours", cfg.tau0},
                      {"horizon_hours", cfg.horizon_hours},
                      {"mark_kind", cfg.mark_kind}};
            if (cfg.mark_kind == "max-ar") params["mark_a"] = cfg.mark_a;
        } else {
            SyntheticSpec spec;
            spec.n = cfg.n;
            if (cfg.kind == "iid") {
                spec.kind = SyntheticSpec::Kind::iid;
                spec.marginal = make_marginal(cfg.marginal, cfg.marginal_a, cfg.marginal_b);
                params = {{"marginal", cfg.marginal}};
            } else if (cfg.kind == "max-ar") {
                spec.kind = SyntheticSpec::Kind::max_ar;
                spec.a = cfg.a;
                params = {{"a", cfg.a}};
            } else if (cfg.kind == "moving-maxima") {
                spec.kind = SyntheticSpec::Kind::moving_maxima;
                spec.weights = parse_list(cfg.weights, "--weights");
                params = {{"weights", spec.weights}};
            } else {
                throw std::invalid_argument(
                    "--kind must be iid, max-ar, moving-maxima, or cox");
            }
            theta_true = spec.theta_true();
            const std::vector<double> values = generate(spec, rng);
            std::vector<EventRecord> records;
            records.reserve(values.size());
            double trigger = values.empty() ? 0.0 : values[0];
            for (std::size_t i = 0; i < values.size(); ++i) {
                records.push_back(EventRecord{static_cast<double>(i), values[i]});
                trigger = std::min(trigger, values[i]);
            }
            series = make_series(std::move(records),
                                 values.empty() ? 0.0 : static_cast<double>(values.size() - 1),
                                 trigger);
        }

        save_events(series, csv_path);
        json manifest = {
            {"command", "simulate"}, {"kind", cfg.kind},     {"seed", cfg.seed},
            {"parameters", params},  {"theta_true", theta_true},
            {"n_events", series.size()},
        };
        write_json(manifest_path, manifest);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "stage " << stage << " failed: " << e.what() << "\n";
        std::error_code ec;
        fs::remove(csv_path, ec);
        fs::remove(manifest_path, ec);
        throw;
    }
}

void add_config_flag(CLI::App* cmd) {
    cmd->add_option("--config")
        ->description("Flat key=value option file; explicit flags win")
        ->expected(1);
}

void add_common_flags(CLI::App* cmd, ReportConfig& cfg) {
    cmd->add_option("--input", cfg.input, "Event CSV (header 'time_hours,peak')")
        ->required();
    cmd->add_option_function<double>(
        "--trigger", [&cfg](double v) { cfg.trigger = v; },
        "Trigger level; defaults to the smallest magnitude");
    cmd->add_option("--out", cfg.out, "Output directory");
    add_config_flag(cmd);
}

// Flat key=value option file. Keys name long flags without the leading
// dashes; a flag given explicitly on the command line wins over the file.
std::vector<std::string> expand_config_args(std::vector<std::string> args) {
    const auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return a == "--config" || a.rfind("--config=", 0) == 0;
    });
    if (it == args.end()) return args;

    std::string path;
    if (*it == "--config") {
        if (std::next(it) == args.end())
            throw std::invalid_argument("--config expects a file path");
        path = *std::next(it);
    } else {
        path = it->substr(std::string("--config=").size());
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);

    std::vector<std::string> extra;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto eq = line.find('=', start);
        if (eq == std::string::npos || eq == start)
            throw std::invalid_argument(path + " line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = line.substr(start, eq - start);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string value = line.substr(eq + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        const auto tail = value.find_last_not_of(" \t\r");
        value.erase(tail == std::string::npos ? 0 : tail + 1);

        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) extra.push_back(flag + "=" + value);
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lifetime-maximum estimation for dependent pulse-load processes"};
    app.require_subcommand(1);

    ReportConfig report_cfg;
    auto* report = app.add_subcommand("report", "Full pipeline: ingest through horizon table");
    add_common_flags(report, report_cfg);
    report->add_option("--ladder", report_cfg.ladder, "Threshold ladder start:stop:step");
    report->add_option("--run-length", report_cfg.run_length_override,
                       "Declustering run length override (>= 2)")
        ->check(CLI::Range(2, 1 << 20));
    report->add_option("--chi2-bins", report_cfg.chi2_bins, "Interarrival test bins")
        ->check(CLI::Range(3, 1 << 20));
    report->add_option("--max-lag", report_cfg.max_lag, "Autocorrelation lag cap")
        ->check(CLI::Range(1, 1 << 20));
    report->add_option("--window-grid", report_cfg.window_grid,
                       "Counting window lengths start:stop:step (hours)");
    report->add_option("--stride", report_cfg.stride, "Sliding window stride (hours)");
    report->add_option("--mc-window", report_cfg.mc_window_hours,
                       "Monte Carlo window (hours); 24 feeds the horizon table");
    report->add_option("--sims", report_cfg.sims, "Monte Carlo simulations (>= 1000)");
    report->add_option("--levels", report_cfg.levels,
                       "Comma list of levels; defaults to the ladder");
    report->add_option("--horizons", report_cfg.horizons, "Comma list of horizons (days)");
    report->add_option("--theta-list", report_cfg.theta_list,
                       "Comma list of extremal indices; defaults to 1 plus the fit");
    report->add_option("--seed", report_cfg.seed, "Random seed")->required();

    ReportConfig theta_cfg;
    auto* theta = app.add_subcommand("theta", "Extremal-index estimation only");
    add_common_flags(theta, theta_cfg);
    theta->add_option("--ladder", theta_cfg.ladder, "Threshold ladder start:stop:step");
    theta->add_option("--run-length", theta_cfg.run_length_override,
                      "Declustering run length override (>= 2)")
        ->check(CLI::Range(2, 1 << 20));
    theta->add_option("--chi2-bins", theta_cfg.chi2_bins, "Interarrival test bins")
        ->check(CLI::Range(3, 1 << 20));
    theta->add_option("--max-lag", theta_cfg.max_lag, "Autocorrelation lag cap")
        ->check(CLI::Range(1, 1 << 20));

    ReportConfig cox_cfg;
    auto* cox = app.add_subcommand("cox", "Arrival-model fit only");
    add_common_flags(cox, cox_cfg);
    cox->add_option("--window-grid", cox_cfg.window_grid,
                    "Counting window lengths start:stop:step (hours)");
    cox->add_option("--stride", cox_cfg.stride, "Sliding window stride (hours)");
    cox->add_option("--chi2-bins", cox_cfg.chi2_bins, "Interarrival test bins")
        ->check(CLI::Range(3, 1 << 20));

    PredictConfig predict_cfg;
    auto* predict =
        app.add_subcommand("predict", "Horizon table from given daily Gumbel parameters");
    predict->add_option("--alpha", predict_cfg.alpha, "Daily Gumbel scale")->required();
    predict->add_option("--mode", predict_cfg.mode, "Daily Gumbel mode")->required();
    predict->add_option("--horizons", predict_cfg.horizons, "Comma list of horizons (days)");
    predict->add_option("--theta-list", predict_cfg.theta_list,
                        "Comma list of extremal indices");
    predict->add_option("--out", predict_cfg.out, "Output directory");
    add_config_flag(predict);

    SimulateConfig sim_cfg;
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic event stream");
    simulate->add_option("--kind", sim_cfg.kind, "iid | max-ar | moving-maxima | cox")
        ->required();
    simulate->add_option("--n", sim_cfg.n, "Sequence length (non-cox kinds)");
    simulate->add_option("--a", sim_cfg.a, "max-ar coupling in (0,1)");
    simulate->add_option("--weights", sim_cfg.weights, "moving-maxima weights, comma list");
    simulate->add_option("--marginal", sim_cfg.marginal,
                         "frechet | gaussian | exponential | uniform");
    simulate->add_option("--marginal-a", sim_cfg.marginal_a,
                         "Marginal location (mean / lo)");
    simulate->add_option("--marginal-b", sim_cfg.marginal_b, "Marginal scale (sd / hi)");
    simulate->add_option("--mu", sim_cfg.mu, "Cox log-intensity location");
    simulate->add_option("--sigma", sim_cfg.sigma, "Cox log-intensity scale");
    simulate->add_option("--tau0", sim_cfg.tau0, "Cox correlation length (hours)");
    simulate->add_option("--horizon-hours", sim_cfg.horizon_hours, "Cox stream horizon");
    simulate->add_option("--dt", sim_cfg.dt, "Cox path step (hours); <= 0 is tau0/50");
    simulate->add_option("--mark-kind", sim_cfg.mark_kind, "iid | max-ar");
    simulate->add_option("--mark-a", sim_cfg.mark_a, "max-ar mark coupling");
    simulate->add_option("--seed", sim_cfg.seed, "Random seed")->required();
    simulate->add_option("--out", sim_cfg.out, "Output CSV path");
    add_config_flag(simulate);

    try {
        app.name(argv[0]);
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config_args(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
        if (report->parsed()) return cmd_report(report_cfg);
        if (theta->parsed()) return cmd_theta(theta_cfg);
        if (cox->parsed()) return cmd_cox(cox_cfg);
        if (predict->parsed()) return cmd_predict(predict_cfg);
        if (simulate->parsed()) return cmd_simulate(sim_cfg);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
