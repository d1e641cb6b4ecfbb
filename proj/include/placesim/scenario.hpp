#pragma once

// Scenario and sweep files: a braking run described against a catalog, plus an
// optional grid of overrides.

#include "placesim/catalog.hpp"
#include "placesim/kinematics.hpp"
#include "placesim/sim.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace placesim {

/// One braking run before catalog resolution.
struct Scenario {
    double initial_gap = 300.0;  // m
    double initial_speed = 0.0;  // m/s
    double deceleration = 0.0;   // m/s^2
    std::string vehicle;         // label only; empty when decel was given directly

    std::string model;
    std::string platform;
    /// "name" or "name:p10|p50|p90" selecting a catalog network (and percentile mode);
    /// empty means the platform's own network.
    std::string network;
    std::optional<double> fixed_rtt;  // s; overrides any network

    sim::DetectionModel detection;
    int confirm_frames = 1;
    sim::ServiceDistribution service = sim::ServiceDistribution::deterministic;
    double background_arrival_rate = 0.0;
    sim::CaptureProcess capture = sim::CaptureProcess::periodic;
    double concurrent_clients = 0.0;  // looked up in the platform's contention table
    std::uint64_t seed = 0;
};

/// Axes of a parameter sweep; an empty axis keeps the base scenario's value.
struct Deployment {
    std::string model;
    std::string platform;
    std::optional<double> detection_range;  // m; per-deployment override
};

struct SweepGrid {
    std::vector<Deployment> deployments;
    std::vector<std::string> vehicles;  // vehicle class names
    std::vector<double> speeds;         // m/s
    std::vector<std::string> networks;  // same syntax as Scenario::network, or "fixed:<seconds>"
    std::vector<double> detection_ranges;
    std::vector<double> background_rates;
    std::vector<std::uint64_t> seeds;
};

struct ScenarioFile {
    Catalog catalog;
    Scenario scenario;
    std::vector<kinematics::VehicleClass> vehicles;  // defaults unless the file defines [vehicle.*]
    std::map<std::string, sim::ContentionTable> contention;  // keyed by platform id
    std::optional<SweepGrid> sweep;
};

/// Parses a scenario/sweep file. The catalog is loaded from the top-level `catalog`
/// path (relative to `base_dir`).
ScenarioFile parse_scenario_file(const std::string& toml_text, const std::filesystem::path& base_dir,
                                 const std::string& origin = "<scenario>");
ScenarioFile load_scenario_file(const std::filesystem::path& path);

/// Looks up profile, platform and network and assembles a validated SimConfig.
sim::SimConfig resolve(const ScenarioFile& file, const Scenario& s);

/// Label recorded in summaries for the network side of a scenario: "none" for device
/// platforms, otherwise the network selector (e.g. "lax:p50" or "fixed:0.06").
std::string rtt_label(const ScenarioFile& file, const Scenario& s);

/// Canonical text of the fully-resolved inputs; the run digest hashes this.
std::string canonical_text(const ScenarioFile& file);

}  // namespace placesim
