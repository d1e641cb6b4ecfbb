#include "placesim/sweep.hpp"

#include "placesim/errors.hpp"

#include <omp.h>

namespace placesim {

namespace {

template <class T>
std::vector<std::optional<T>> axis(const std::vector<T>& values)
{
    if (values.empty()) return {std::nullopt};
    return {values.begin(), values.end()};
}

const kinematics::VehicleClass* find_vehicle(const ScenarioFile& f, const std::string& name)
{
    for (const auto& v : f.vehicles) {
        if (v.name == name) return &v;
    }
    return nullptr;
}

}  // namespace

std::vector<GridPoint> expand_grid(const ScenarioFile& file)
{
    const Scenario& base = file.scenario;
    if (!file.sweep) return {GridPoint{0, base}};
    const SweepGrid& g = *file.sweep;

    std::vector<GridPoint> points;
    for (const auto& dep : axis(g.deployments)) {
        for (const auto& vehicle : axis(g.vehicles)) {
            for (const auto& speed : axis(g.speeds)) {
                for (const auto& network : axis(g.networks)) {
                    for (const auto& range : axis(g.detection_ranges)) {
                        for (const auto& bg : axis(g.background_rates)) {
                            for (const auto& seed : axis(g.seeds)) {
                                Scenario s = base;
                                if (dep) {
                                    s.model = dep->model;
                                    s.platform = dep->platform;
                                    if (dep->detection_range) s.detection.detection_range = *dep->detection_range;
                                }
                                if (vehicle) {
                                    s.vehicle = *vehicle;
                                    // Unknown names surface as a per-point error.
                                    const auto* vc = find_vehicle(file, *vehicle);
                                    s.deceleration = vc ? vc->deceleration : -1.0;
                                }
                                if (speed) s.initial_speed = *speed;
                                if (network) {
                                    s.network = *network;
                                    s.fixed_rtt.reset();
                                }
                                if (range) s.detection.detection_range = *range;
                                if (bg) s.background_arrival_rate = *bg;
                                if (seed) s.seed = *seed;
                                points.push_back(GridPoint{points.size(), std::move(s)});
                            }
                        }
                    }
                }
            }
        }
    }
    return points;
}

SweepRow run_point(const ScenarioFile& file, const GridPoint& point)
{
    SweepRow row;
    row.point = point;
    try {
        if (!point.scenario.vehicle.empty() && !(point.scenario.deceleration > 0.0)) {
            throw ConfigError("unknown vehicle class '" + point.scenario.vehicle + "'");
        }
        row.rtt_mode = rtt_label(file, point.scenario);
        auto config = resolve(file, point.scenario);
        config.record_events = false;
        row.result = sim::run(config);
    } catch (const std::exception& e) {
        row.error = e.what();
        row.result.reset();
    }
    return row;
}

std::vector<SweepRow> run_sweep_serial(const ScenarioFile& file, const std::vector<GridPoint>& points)
{
    std::vector<SweepRow> rows;
    rows.reserve(points.size());
    for (const auto& p : points) rows.push_back(run_point(file, p));
    return rows;
}

std::vector<SweepRow> run_sweep_parallel(const ScenarioFile& file, const std::vector<GridPoint>& points, int jobs)
{
    std::vector<SweepRow> rows(points.size());
    const auto n = static_cast<std::int64_t>(points.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    // run_point never throws, so nothing escapes the parallel region.
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)] = run_point(file, points[static_cast<std::size_t>(i)]);
    }
    return rows;
}

}  // namespace placesim
