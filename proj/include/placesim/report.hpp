#pragma once

// Text, CSV and JSON-lines renderings of reports and simulation results.

#include "placesim/feasibility.hpp"
#include "placesim/scenario.hpp"
#include "placesim/sim.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace placesim::report {

/// printf("%.6g"); empty string for absent values.
std::string sig6(double v);
std::string sig6(const std::optional<double>& v);

inline constexpr const char* kTraceHeader = "run_id,time_s,event,frame,position_m,obstacle_distance_m";
inline constexpr const char* kSummaryHeader =
    "run_id,model,platform,speed_mps,decel_mps2,rtt_mode,bg_rate_hz,seed,t_obs_s,t_det_s,t_brake_s,t_stop_s,"
    "d_capture_m,d_brake_m,d_stop_m,detection_delay_s,energy_j,outcome";

void write_trace(std::ostream& os, std::size_t run_id, const std::vector<sim::SimEvent>& events);

/// One summary row. With `with_error` an extra error column is appended; failed points
/// carry empty metrics and outcome "error".
void write_summary_row(std::ostream& os, std::size_t run_id, const Scenario& s, const std::string& rtt_mode,
                       const std::optional<sim::SimResult>& result, const std::string& error, bool with_error);

enum class Format { text, jsonl, csv };
Format parse_format(const std::string& s);

/// Evaluated pairs followed by the per-kind selections.
void write_placement(std::ostream& os, const FeasibilityReport& report,
                     const std::vector<std::pair<PlatformKind, std::optional<PairKey>>>& selections, Format f);

std::string csv_escape(const std::string& s);

}  // namespace placesim::report
