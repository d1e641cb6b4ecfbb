#include "fixtures.hpp"

#include "placesim/errors.hpp"
#include "placesim/scenario.hpp"
#include "placesim/sweep.hpp"

#include <doctest.h>

using namespace placesim;

namespace {

ScenarioFile write_and_load(const std::string& name, const std::string& body)
{
    const auto dir = fixtures::scratch(name);
    fixtures::write_file(dir / "s.toml", "catalog = \"" + (fixtures::config_dir() / "table1.toml").string() + "\"\n" + body);
    return load_scenario_file(dir / "s.toml");
}

const char* kBase = R"(
[scenario]
speed_mph = 40
vehicle = "car"
model = "YOLO11m"
platform = "jetson"

[detection]
range_m = 120.0
visibility_m = 140.0
)";

}  // namespace

TEST_CASE("scenario files resolve against the catalog")
{
    const auto f = load_scenario_file(fixtures::config_dir() / "baseline.toml");
    CHECK(f.scenario.initial_speed == 17.8816);
    CHECK(f.scenario.deceleration == 6.0);
    CHECK(f.scenario.fixed_rtt == 0.022);
    CHECK(rtt_label(f, f.scenario) == "fixed:0.022");
    const auto c = resolve(f, f.scenario);
    CHECK(c.profile.inference_latency == 0.029);
    CHECK(c.platform.kind == PlatformKind::cloud);
    CHECK(c.network->percentile(0.5) == 0.022);
    CHECK(c.detection.detection_range == 120.0);
    CHECK(c.seed == 1);
    CHECK_FALSE(f.sweep);
}

TEST_CASE("vehicle class supplies deceleration")
{
    const auto f = write_and_load("vehicle", kBase);
    CHECK(f.scenario.deceleration == 6.0);
    CHECK(f.vehicles.size() == 3);
    CHECK(rtt_label(f, f.scenario) == "none");
}

TEST_CASE("network selectors")
{
    auto f = write_and_load("selectors", kBase);
    auto s = f.scenario;
    s.model = "YOLO11x";
    s.platform = "a5000";
    CHECK(rtt_label(f, s) == "lax:p50");
    s.network = "lax:p90";
    CHECK(rtt_label(f, s) == "lax:p90");
    CHECK(resolve(f, s).network->percentile(0.5) == 0.022);
    auto rng = net::make_stream(1, 1);
    CHECK(resolve(f, s).network->sample(rng) == 0.060);
    s.network = "fixed:0.05";
    CHECK(rtt_label(f, s) == "fixed:0.05");
    s.network = "fixed:abc";
    CHECK_THROWS_AS(resolve(f, s), ConfigError);
    s.network = "nowhere";
    CHECK_THROWS_AS(resolve(f, s), ConfigError);
    s.network = "lax:p99";
    CHECK_THROWS_AS(resolve(f, s), ConfigError);
}

TEST_CASE("scenario file errors")
{
    CHECK_THROWS_AS(load_scenario_file("/nonexistent.toml"), ConfigError);
    CHECK_THROWS_AS(write_and_load("unknown_key", std::string(kBase) + "\n[sim]\nbogus = 1\n"), ConfigError);
    const auto f = write_and_load("bad_model", kBase);
    auto s = f.scenario;
    s.model = "YOLO99";
    CHECK_THROWS_AS(resolve(f, s), ConfigError);
    s = f.scenario;
    s.concurrent_clients = 3;
    CHECK_THROWS_AS(resolve(f, s), ConfigError);
}

TEST_CASE("canonical text is stable")
{
    const auto a = load_scenario_file(fixtures::config_dir() / "sweep_baseline.toml");
    const auto b = load_scenario_file(fixtures::config_dir() / "sweep_baseline.toml");
    CHECK(canonical_text(a) == canonical_text(b));
    CHECK(canonical_text(a) != canonical_text(load_scenario_file(fixtures::config_dir() / "sweep_tail.toml")));
}

TEST_CASE("3 speeds x 2 platforms x 1 seed gives 6 ordered rows")
{
    const auto f = write_and_load("cardinality", std::string(kBase) + R"(
[sweep]
deployments = [{ model = "YOLO11m", platform = "jetson" }, { model = "YOLO11x", platform = "a5000" }]
speeds_mph = [20, 40, 60]
seeds = [3]
)");
    const auto points = expand_grid(f);
    REQUIRE(points.size() == 6);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i].index == i);
        CHECK(points[i].scenario.platform == (i < 3 ? "jetson" : "a5000"));
        CHECK(points[i].scenario.seed == 3);
    }
    CHECK(points[1].scenario.initial_speed == 17.8816);
    const auto rows = run_sweep_serial(f, points);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.error.empty());
        REQUIRE(r.result);
        CHECK(r.result->events.empty());
    }
}

TEST_CASE("baseline grid: cloud stops farther from the obstacle")
{
    const auto f = load_scenario_file(fixtures::config_dir() / "sweep_baseline.toml");
    const auto rows = run_sweep_parallel(f, expand_grid(f), 0);
    REQUIRE(rows.size() == 18);
    for (std::size_t i = 0; i < 9; ++i) {
        const auto& device = rows[i];
        const auto& cloud = rows[i + 9];
        CHECK(device.point.scenario.platform == "jetson");
        CHECK(cloud.point.scenario.platform == "a5000");
        CHECK(device.rtt_mode == "none");
        CHECK(cloud.rtt_mode == "lax:p50");
        CHECK(cloud.point.scenario.initial_speed == device.point.scenario.initial_speed);
        CHECK(*cloud.result->d_stop > *device.result->d_stop);
    }
}

TEST_CASE("invalid points are reported and the rest still run")
{
    const auto f = write_and_load("partial", std::string(kBase) + R"(
[sweep]
vehicles = ["car", "bus"]
speeds_mph = [20, 40, 60]
)");
    const auto rows = run_sweep_parallel(f, expand_grid(f), 2);
    REQUIRE(rows.size() == 6);
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            ++failed;
            CHECK_FALSE(r.result);
            CHECK(r.point.scenario.vehicle == "bus");
            CHECK(r.error.find("bus") != std::string::npos);
        }
    }
    CHECK(failed == 3);
}

TEST_CASE("sweep rows do not depend on thread count")
{
    const auto f = load_scenario_file(fixtures::config_dir() / "contention.toml");
    const auto points = expand_grid(f);
    CHECK(points.size() == 20);
    const auto serial = run_sweep_serial(f, points);
    for (int jobs : {1, 3, 8}) {
        const auto parallel = run_sweep_parallel(f, points, jobs);
        REQUIRE(parallel.size() == serial.size());
        for (std::size_t i = 0; i < serial.size(); ++i) CHECK(parallel[i].result == serial[i].result);
    }
}

TEST_CASE("device rows ignore the network axis")
{
    const auto f = load_scenario_file(fixtures::config_dir() / "sweep_tail.toml");
    const auto rows = run_sweep_serial(f, expand_grid(f));
    REQUIRE(rows.size() == 36);
    // device rows for p50 and p90 are identical runs
    CHECK(rows[0].result == rows[1].result);
    CHECK(rows[0].rtt_mode == "none");
    CHECK(rows[18].rtt_mode == "lax:p50");
    CHECK(rows[19].rtt_mode == "lax:p90");
    CHECK(*rows[18].result->d_brake > *rows[19].result->d_brake);
}
