#include "cli.hpp"

#include "placesim/catalog.hpp"
#include "placesim/errors.hpp"
#include "placesim/feasibility.hpp"
#include "placesim/kinematics.hpp"
#include "placesim/latency.hpp"
#include "placesim/manifest.hpp"
#include "placesim/queue_mc.hpp"
#include "placesim/report.hpp"
#include "placesim/scenario.hpp"
#include "placesim/sim.hpp"
#include "placesim/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace placesim::cli {

namespace {

struct GlobalOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string format = "text";
    bool quiet = false;
};

std::optional<std::uint64_t> resolve_seed(const GlobalOptions& g)
{
    if (g.seed) return g.seed;
    if (const char* env = std::getenv("PLACESIM_SEED"); env && *env) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (*end != '\0') throw ConfigError(std::string("PLACESIM_SEED is not an integer: ") + env);
        return v;
    }
    return std::nullopt;
}

std::string input_path(const std::string& positional, const GlobalOptions& g, const char* what)
{
    if (!positional.empty()) return positional;
    if (!g.config.empty()) return g.config;
    throw ConfigError(std::string("no ") + what + " given (positional argument or --config)");
}

double parse_quantile(const std::string& s)
{
    if (s == "p10") return 0.1;
    if (s == "p50") return 0.5;
    if (s == "p90") return 0.9;
    char* end = nullptr;
    const double q = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !(q >= 0.0 && q <= 1.0)) {
        throw ConfigError("--percentile expects p10, p50, p90 or a fraction in [0, 1], got '" + s + "'");
    }
    return q;
}

// ---------------------------------------------------------------- place

struct PlaceOptions {
    std::string catalog;
    std::string percentile = "p50";
    std::optional<double> rtt;
    bool amortized = false;
};

NetworkPoint network_point(const Catalog& catalog, const std::string& percentile, std::optional<double> rtt)
{
    NetworkPoint point = representative_network_point(catalog, parse_quantile(percentile));
    if (rtt) {
        if (!(*rtt >= 0.0)) throw ConfigError("--rtt must be >= 0");
        for (auto& [id, value] : point) value = *rtt;
    }
    return point;
}

using Selections = std::vector<std::pair<PlatformKind, std::optional<PairKey>>>;

Selections select_per_kind(const Catalog& catalog, const FeasibilityReport& report)
{
    Selections out;
    for (auto kind : {PlatformKind::device, PlatformKind::cloud}) {
        bool declared = false;
        for (const auto& p : catalog.platforms()) declared = declared || p.kind == kind;
        if (!declared) continue;
        out.emplace_back(kind, select_optimal(restrict_to_kind(report, kind)).selected);
    }
    return out;
}

int cmd_place(const PlaceOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err)
{
    const auto catalog = load_catalog(input_path(o.catalog, g, "catalog"));
    const auto format = report::parse_format(g.format);
    const auto report = feasibility_set(catalog, network_point(catalog, o.percentile, o.rtt), {o.amortized});
    const auto selections = select_per_kind(catalog, report);

    if (!g.quiet) report::write_placement(out, report, selections, format);

    bool empty = selections.empty();
    for (const auto& [kind, sel] : selections) empty = empty || !sel;
    if (empty) {
        if (selections.empty()) {
            err << "placesim: catalog declares no platforms; feasible set is empty\n";
        }
        for (const auto& [kind, sel] : selections) {
            if (!sel) err << "placesim: empty feasible set for " << to_string(kind) << " platforms\n";
        }
        return kEmptyFeasibleSet;
    }
    return kOk;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string catalog;
    std::string scenario;
    std::string percentile = "p50";
    bool kinematics = false;
    bool break_even = false;
    std::vector<double> speeds_mph;
    std::vector<double> decels;
    std::vector<double> available;
};

struct KinematicPoint {
    std::string label;
    double speed;
    double decel;
    double available;
};

int cmd_analyze(const AnalyzeOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream&)
{
    std::optional<ScenarioFile> scenario;
    if (!o.scenario.empty()) scenario = load_scenario_file(o.scenario);

    Catalog catalog;
    if (!o.catalog.empty() || !g.config.empty()) {
        catalog = load_catalog(input_path(o.catalog, g, "catalog"));
    } else if (scenario) {
        catalog = scenario->catalog;
    } else {
        throw ConfigError("no catalog given (positional argument, --config or --scenario)");
    }

    const bool show_queue = !o.kinematics || o.break_even;
    const bool show_kinematics = o.kinematics;
    const double F = catalog.sensing().frame_rate;
    const auto point = network_point(catalog, o.percentile, std::nullopt);
    auto fmt = [](double v) { return report::sig6(v); };

    out << "frame rate " << fmt(F) << " Hz, deadline " << fmt(catalog.sensing().deadline) << " s, control delay "
        << fmt(catalog.sensing().control_delay) << " s\n";

    if (show_queue) {
        out << "\nqueue-amortized inference latency at F = " << fmt(F) << " Hz\n";
        for (const auto& p : catalog.profiles()) {
            const latency::QueueModel q{p.inference_latency, F};
            out << "  " << std::left << std::setw(12) << p.model_id << std::setw(12) << p.platform_id
                << "rho " << std::setw(9) << fmt(q.utilization());
            if (q.stable()) {
                out << "amortized " << fmt(latency::amortized_latency(q)) << " s\n";
            } else {
                out << "unstable\n";
            }
        }

        out << "\ncloud break-even round trip (cloud preferred when RTT is strictly below)\n";
        bool any = false;
        for (const auto& dev : catalog.profiles()) {
            if (catalog.platform(dev.platform_id).kind != PlatformKind::device) continue;
            for (const auto& cl : catalog.profiles()) {
                const auto& cp = catalog.platform(cl.platform_id);
                if (cp.kind != PlatformKind::cloud || cl.model_id != dev.model_id) continue;
                any = true;
                out << "  " << std::left << std::setw(12) << dev.model_id << dev.platform_id << " vs "
                    << cl.platform_id << ": ";
                const latency::QueueModel dq{dev.inference_latency, F};
                if (!dq.stable()) {
                    out << "device queue unstable (rho " << fmt(dq.utilization()) << ")\n";
                    continue;
                }
                const double rtt = point.at(cl.platform_id);
                const auto pref = latency::prefer_cloud(rtt, dev.inference_latency, cl.inference_latency, F);
                if (pref.cloud_queue_unstable) {
                    out << "cloud queue unstable; device preferred\n";
                    continue;
                }
                const double be = latency::cloud_break_even(dev.inference_latency, cl.inference_latency, F);
                out << "break-even " << fmt(be) << " s, RTT " << fmt(rtt) << " s -> "
                    << (pref.prefer_cloud ? "cloud" : "device") << "\n";
            }
        }
        if (!any) out << "  (no model profiled on both a device and a cloud platform)\n";
    }

    if (show_kinematics) {
        std::vector<KinematicPoint> grid;
        if (!o.speeds_mph.empty() || !o.decels.empty() || !o.available.empty()) {
            if (o.speeds_mph.empty() || o.decels.empty() || o.available.empty()) {
                throw ConfigError("--speed-mph, --decel and --available-m must be given together");
            }
            for (double v : o.speeds_mph)
                for (double a : o.decels)
                    for (double s : o.available) grid.push_back({"", kinematics::mph_to_mps(v), a, s});
        } else {
            const auto vehicles = scenario ? scenario->vehicles : kinematics::default_vehicle_classes();
            const double avail = scenario ? scenario->scenario.detection.detection_range : 100.0;
            for (const auto& vc : vehicles)
                for (double v : vc.speed_presets) grid.push_back({vc.name, v, vc.deceleration, avail});
        }

        const auto report = feasibility_set(catalog, point);
        const auto selections = select_per_kind(catalog, report);

        out << "\nreaction-time budget and safety (perception delay = RTT + inference)\n";
        for (const auto& k : grid) {
            const auto s = kinematics::make_scenario(k.speed, k.decel, k.available);
            const double budget = kinematics::reaction_budget(s);
            out << "  " << (k.label.empty() ? "" : k.label + " ") << fmt(k.speed) << " m/s, a " << fmt(k.decel)
                << " m/s^2, s_avail " << fmt(k.available) << " m: tau_react " << fmt(budget) << " s";
            if (budget < 0.0) {
                out << "  infeasible at zero delay\n";
                continue;
            }
            out << "\n";
            for (const auto& [kind, sel] : selections) {
                if (!sel) continue;
                const auto& e = *report.find(sel->model_id, sel->platform_id);
                const double delay = e.network_delay + e.inference_latency;
                out << "    " << to_string(kind) << " " << sel->model_id << ": delay " << fmt(delay) << " s, s_stop "
                    << fmt(kinematics::stopping_distance(k.speed, k.decel, delay)) << " m -> "
                    << (kinematics::is_safe_static(e.network_delay, e.inference_latency, s) ? "safe" : "unsafe")
                    << "\n";
            }
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::string scenario;
    std::string trace_out;
    std::string summary_out;
    std::optional<double> rtt;
};

std::ofstream open_output(const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    return f;
}

int cmd_simulate(const SimulateOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err)
{
    auto file = load_scenario_file(input_path(o.scenario, g, "scenario"));
    if (auto seed = resolve_seed(g)) file.scenario.seed = *seed;
    if (o.rtt) file.scenario.fixed_rtt = *o.rtt;
    file.sweep.reset();

    const auto config = resolve(file, file.scenario);
    const auto manifest = make_manifest("simulate", canonical_text(file), file.scenario.seed);

    sim::SimResult result;
    try {
        result = sim::run(config);
    } catch (const HorizonError& e) {
        err << "placesim: " << e.what() << "\n";
        return kHorizonAbort;
    }

    if (!o.trace_out.empty()) {
        auto f = open_output(o.trace_out);
        f << manifest.comment_line() << "\n" << report::kTraceHeader << "\n";
        report::write_trace(f, 0, result.events);
    }
    if (!o.summary_out.empty()) {
        auto f = open_output(o.summary_out);
        f << manifest.comment_line() << "\n" << report::kSummaryHeader << "\n";
        report::write_summary_row(f, 0, file.scenario, rtt_label(file, file.scenario), result, "", false);
    }

    if (!g.quiet) {
        out << sim::to_string(result.outcome) << ": " << file.scenario.model << " on " << file.scenario.platform
            << " at " << report::sig6(file.scenario.initial_speed) << " m/s";
        if (result.d_capture) out << ", d_capture " << report::sig6(*result.d_capture) << " m";
        if (result.d_brake) out << ", d_brake " << report::sig6(*result.d_brake) << " m";
        if (result.d_stop) out << ", d_stop " << report::sig6(*result.d_stop) << " m";
        if (result.detection_delay) out << ", detection delay " << report::sig6(*result.detection_delay) << " s";
        out << "\n";
    }
    return result.outcome == sim::Outcome::collision ? kCollision : kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
    std::string sweep;
    std::string out;
    int jobs = 1;
};

int cmd_sweep(const SweepOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err)
{
    auto file = load_scenario_file(input_path(o.sweep, g, "sweep file"));
    if (auto seed = resolve_seed(g)) file.scenario.seed = *seed;

    const auto points = expand_grid(file);
    const auto rows = o.jobs == 1 ? run_sweep_serial(file, points) : run_sweep_parallel(file, points, o.jobs);
    const auto manifest = make_manifest("sweep", canonical_text(file), file.scenario.seed);

    std::ofstream file_out;
    if (!o.out.empty()) file_out = open_output(o.out);
    std::ostream& csv = o.out.empty() ? out : file_out;

    csv << manifest.comment_line() << "\n" << report::kSummaryHeader << ",error\n";
    std::size_t failed = 0;
    for (const auto& row : rows) {
        report::write_summary_row(csv, row.point.index, row.point.scenario, row.rtt_mode, row.result, row.error, true);
        if (!row.result) ++failed;
    }
    if (!g.quiet && !o.out.empty()) {
        out << rows.size() << " points, " << failed << " failed -> " << o.out << "\n";
    }
    if (failed > 0) {
        err << "placesim: " << failed << " of " << rows.size() << " sweep points failed\n";
        return kPartialSweep;
    }
    return kOk;
}

// ---------------------------------------------------------------- validate-queue

struct ValidateOptions {
    double rho = 0.5;
    double service = 0.05;
    std::uint64_t customers = 1000000;
    bool strict = false;
};

int cmd_validate_queue(const ValidateOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err)
{
    if (!(o.rho > 0.0) || !(o.service > 0.0) || o.customers < 1) {
        throw ConfigError("--rho and --service must be > 0 and --customers >= 1");
    }
    if (o.rho >= 1.0 && o.strict) {
        err << "placesim: rho = " << o.rho << " is not a stable queue\n";
        return kConfigError;
    }
    const std::uint64_t seed = resolve_seed(g).value_or(1);
    const double arrival = o.rho / o.service;
    const auto stats = queue_mc::simulate_mm1(arrival, o.service, o.customers, seed);

    const bool stable = o.rho < 1.0;
    const double closed = stable ? latency::amortized_latency(o.service, arrival) : INFINITY;
    const double rel = stable ? std::abs(stats.mean_sojourn - closed) / closed : INFINITY;
    const bool pass = stable && rel < 0.02;

    if (!g.quiet) {
        if (g.format == "jsonl") {
            nlohmann::json j{{"rho", o.rho},
                             {"service_s", o.service},
                             {"arrival_hz", arrival},
                             {"customers", o.customers},
                             {"seed", seed},
                             {"closed_form_s", stable ? nlohmann::json(closed) : nlohmann::json(nullptr)},
                             {"simulated_s", stats.mean_sojourn},
                             {"relative_error", stable ? nlohmann::json(rel) : nlohmann::json(nullptr)},
                             {"diverged", stats.diverged},
                             {"pass", pass}};
            out << j.dump() << "\n";
        } else {
            out << "rho " << report::sig6(o.rho) << ", service " << report::sig6(o.service) << " s, arrival "
                << report::sig6(arrival) << " Hz, " << o.customers << " customers, seed " << seed << "\n";
            out << "closed form   " << (stable ? report::sig6(closed) + " s" : std::string("unstable")) << "\n";
            out << "simulated     " << report::sig6(stats.mean_sojourn) << " s (wait " << report::sig6(stats.mean_wait)
                << " s, utilization " << report::sig6(stats.utilization_observed) << ")\n";
            out << "rel. error    " << (stable ? report::sig6(rel) : std::string("n/a")) << " -> "
                << (pass ? "PASS" : "FAIL") << " (tolerance 2%)\n";
        }
    }
    return pass ? kOk : kToleranceExceeded;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Inference placement analysis and braking simulation", "placesim"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::uint64_t seed_value = 0;
    app.add_option("--config", g.config, "Catalog, scenario or sweep file");
    auto* seed_opt = app.add_option("--seed", seed_value, "Random seed (falls back to PLACESIM_SEED)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "jsonl", "csv"}));
    app.add_flag("--quiet,-q", g.quiet, "Suppress normal output");

    PlaceOptions place;
    auto* place_cmd = app.add_subcommand("place", "Feasibility set and accuracy-optimal placement");
    place_cmd->add_option("catalog", place.catalog, "Catalog TOML file");
    place_cmd->add_option("--percentile", place.percentile, "Representative RTT: p10, p50, p90 or a fraction");
    place_cmd->add_option("--rtt", place.rtt, "Fixed RTT in seconds for every cloud platform");
    place_cmd->add_flag("--amortized", place.amortized, "Use queue-amortized inference latency");

    AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Amortized latency, break-even RTT and reaction budgets");
    analyze_cmd->add_option("catalog", analyze.catalog, "Catalog TOML file");
    analyze_cmd->add_option("--scenario", analyze.scenario, "Scenario file supplying vehicles and catalog");
    analyze_cmd->add_option("--percentile", analyze.percentile, "Representative RTT percentile");
    analyze_cmd->add_flag("--kinematics", analyze.kinematics, "Reaction budgets and safety verdicts");
    analyze_cmd->add_flag("--break-even", analyze.break_even, "Queue-amortized break-even RTTs");
    analyze_cmd->add_option("--speed-mph", analyze.speeds_mph, "Speeds for the kinematics grid");
    analyze_cmd->add_option("--decel", analyze.decels, "Decelerations (m/s^2) for the kinematics grid");
    analyze_cmd->add_option("--available-m", analyze.available, "Available distances (m) for the kinematics grid");

    SimulateOptions simulate;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run one braking simulation");
    simulate_cmd->add_option("scenario", simulate.scenario, "Scenario TOML file");
    simulate_cmd->add_option("--trace-out", simulate.trace_out, "Event trace CSV");
    simulate_cmd->add_option("--summary-out", simulate.summary_out, "Summary CSV");
    simulate_cmd->add_option("--rtt", simulate.rtt, "Override the network with a fixed RTT (s)");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid");
    sweep_cmd->add_option("sweep", sweep.sweep, "Sweep TOML file");
    sweep_cmd->add_option("--out", sweep.out, "Summary CSV (default: stdout)");
    sweep_cmd->add_option("--jobs,-j", sweep.jobs, "Parallel jobs (0 = all cores)")->check(CLI::NonNegativeNumber);

    ValidateOptions validate;
    auto* validate_cmd = app.add_subcommand("validate-queue", "Monte Carlo check of the M/M/1 closed form");
    validate_cmd->add_option("--rho", validate.rho, "Utilization")->required();
    validate_cmd->add_option("--service", validate.service, "Mean service time (s)");
    validate_cmd->add_option("--customers", validate.customers, "Customers to serve");
    validate_cmd->add_flag("--strict", validate.strict, "Reject rho >= 1 as a configuration error");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }
    if (seed_opt->count() > 0) g.seed = seed_value;

    try {
        if (place_cmd->parsed()) return cmd_place(place, g, out, err);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze, g, out, err);
        if (simulate_cmd->parsed()) return cmd_simulate(simulate, g, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep, g, out, err);
        if (validate_cmd->parsed()) return cmd_validate_queue(validate, g, out, err);
    } catch (const std::exception& e) {
        err << "placesim: " << e.what() << "\n";
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace placesim::cli
