#pragma once

// Cartesian-product parameter sweeps over braking scenarios.
//
// Grid order, outermost first: deployment, vehicle, speed, network, detection
// range, background rate, seed. Rows always come back in that order no matter
// how many threads ran them.

#include "placesim/scenario.hpp"
#include "placesim/sim.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace placesim {

struct GridPoint {
    std::size_t index = 0;
    Scenario scenario;
};

struct SweepRow {
    GridPoint point;
    std::string rtt_mode;
    std::optional<sim::SimResult> result;  // absent when the point failed
    std::string error;
};

std::vector<GridPoint> expand_grid(const ScenarioFile& file);

/// Evaluates one point; errors (bad overrides, horizon aborts) land in `error`.
SweepRow run_point(const ScenarioFile& file, const GridPoint& point);

/// Reference implementation: points one after another.
std::vector<SweepRow> run_sweep_serial(const ScenarioFile& file, const std::vector<GridPoint>& points);

/// OpenMP implementation; `jobs <= 0` uses the runtime default thread count.
std::vector<SweepRow> run_sweep_parallel(const ScenarioFile& file, const std::vector<GridPoint>& points, int jobs);

}  // namespace placesim
