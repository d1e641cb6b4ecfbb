#include "placesim/report.hpp"

#include "placesim/errors.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>

#include "json.hpp"

namespace placesim::report {

std::string sig6(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string sig6(const std::optional<double>& v) { return v ? sig6(*v) : std::string(); }

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_trace(std::ostream& os, std::size_t run_id, const std::vector<sim::SimEvent>& events)
{
    for (const auto& e : events) {
        os << run_id << ',' << sig6(e.time) << ',' << sim::to_string(e.kind) << ','
           << (e.frame ? std::to_string(*e.frame) : std::string()) << ',' << sig6(e.vehicle_position) << ','
           << sig6(e.obstacle_distance) << '\n';
    }
}

void write_summary_row(std::ostream& os, std::size_t run_id, const Scenario& s, const std::string& rtt_mode,
                       const std::optional<sim::SimResult>& r, const std::string& error, bool with_error)
{
    os << run_id << ',' << csv_escape(s.model) << ',' << csv_escape(s.platform) << ',' << sig6(s.initial_speed) << ','
       << sig6(s.deceleration) << ',' << csv_escape(rtt_mode) << ',' << sig6(s.background_arrival_rate) << ','
       << s.seed << ',';
    if (r) {
        os << sig6(r->t_obs) << ',' << sig6(r->t_det) << ',' << sig6(r->t_brake) << ',' << sig6(r->t_stop) << ','
           << sig6(r->d_capture) << ',' << sig6(r->d_brake) << ',' << sig6(r->d_stop) << ','
           << sig6(r->detection_delay) << ',' << sig6(r->total_inference_energy) << ',' << sim::to_string(r->outcome);
    } else {
        os << ",,,,,,,,,error";
    }
    if (with_error) os << ',' << csv_escape(error);
    os << '\n';
}

Format parse_format(const std::string& s)
{
    if (s == "text") return Format::text;
    if (s == "jsonl") return Format::jsonl;
    if (s == "csv") return Format::csv;
    throw ConfigError("unknown format '" + s + "' (expected text, jsonl or csv)");
}

namespace {

std::string reason(const PairEvaluation& e) { return e.reject_reason ? to_string(*e.reject_reason) : ""; }

}  // namespace

void write_placement(std::ostream& os, const FeasibilityReport& report,
                     const std::vector<std::pair<PlatformKind, std::optional<PairKey>>>& selections, Format f)
{
    switch (f) {
    case Format::jsonl:
        for (const auto& e : report.evaluated) {
            nlohmann::json j{{"type", "pair"},
                             {"model", e.model_id},
                             {"platform", e.platform_id},
                             {"kind", to_string(e.kind)},
                             {"network_s", e.network_delay},
                             {"inference_s", std::isfinite(e.inference_latency) ? nlohmann::json(e.inference_latency)
                                                                                : nlohmann::json(nullptr)},
                             {"total_s", std::isfinite(e.total_latency) ? nlohmann::json(e.total_latency)
                                                                        : nlohmann::json(nullptr)},
                             {"energy_j", e.energy},
                             {"accuracy", e.accuracy},
                             {"feasible", e.feasible},
                             {"reject_reason", e.reject_reason ? nlohmann::json(reason(e)) : nlohmann::json(nullptr)}};
            os << j.dump() << '\n';
        }
        for (const auto& [kind, sel] : selections) {
            nlohmann::json j{{"type", "selection"}, {"kind", to_string(kind)}};
            j["model"] = sel ? nlohmann::json(sel->model_id) : nlohmann::json(nullptr);
            j["platform"] = sel ? nlohmann::json(sel->platform_id) : nlohmann::json(nullptr);
            os << j.dump() << '\n';
        }
        return;

    case Format::csv:
        os << "model,platform,kind,network_s,inference_s,total_s,energy_j,accuracy,feasible,reject_reason\n";
        for (const auto& e : report.evaluated) {
            os << csv_escape(e.model_id) << ',' << csv_escape(e.platform_id) << ',' << to_string(e.kind) << ','
               << sig6(e.network_delay) << ',' << sig6(e.inference_latency) << ',' << sig6(e.total_latency) << ','
               << sig6(e.energy) << ',' << sig6(e.accuracy) << ',' << (e.feasible ? "true" : "false") << ','
               << reason(e) << '\n';
        }
        for (const auto& [kind, sel] : selections) {
            os << "# selected " << to_string(kind) << ": " << (sel ? sel->model_id + " on " + sel->platform_id : "none")
               << '\n';
        }
        return;

    case Format::text: break;
    }

    os << "deadline " << sig6(report.deadline) << " s" << (report.amortized ? " (queue-amortized inference)" : "")
       << "\n\n";
    os << std::left << std::setw(12) << "model" << std::setw(12) << "platform" << std::setw(8) << "kind"
       << std::right << std::setw(10) << "net_s" << std::setw(11) << "infer_s" << std::setw(11) << "total_s"
       << std::setw(10) << "energy_j" << std::setw(10) << "accuracy" << "  verdict\n";
    for (const auto& e : report.evaluated) {
        os << std::left << std::setw(12) << e.model_id << std::setw(12) << e.platform_id << std::setw(8)
           << to_string(e.kind) << std::right << std::setw(10) << sig6(e.network_delay) << std::setw(11)
           << sig6(e.inference_latency) << std::setw(11) << sig6(e.total_latency) << std::setw(10) << sig6(e.energy)
           << std::setw(10) << sig6(e.accuracy) << "  " << (e.feasible ? "feasible" : "rejected (" + reason(e) + ")")
           << '\n';
    }
    os << '\n';
    for (const auto& [kind, sel] : selections) {
        os << to_string(kind) << ": ";
        if (sel) {
            os << sel->model_id << " on " << sel->platform_id << '\n';
        } else {
            os << "no feasible pair\n";
        }
    }
}

}  // namespace placesim::report
