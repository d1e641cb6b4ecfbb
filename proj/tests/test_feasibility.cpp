#include "fixtures.hpp"

#include "placesim/errors.hpp"
#include "placesim/feasibility.hpp"

#include <doctest.h>

using namespace placesim;

namespace {

std::vector<std::string> feasible_models(const FeasibilityReport& r, const std::string& platform)
{
    std::vector<std::string> out;
    for (const auto& e : r.evaluated) {
        if (e.platform_id == platform && e.feasible) out.push_back(e.model_id);
    }
    return out;
}

}  // namespace

TEST_CASE("Table I feasibility at 100 ms")
{
    const auto cat = fixtures::table1();
    const auto r = feasibility_set(cat, {{"a5000", 0.022}});
    CHECK(r.evaluated.size() == 10);
    CHECK(feasible_models(r, "jetson") == std::vector<std::string>{"YOLO11m", "YOLO11s", "YOLO11n"});
    CHECK(feasible_models(r, "a5000").size() == 5);
    for (const char* m : {"YOLO11x", "YOLO11l"}) {
        const auto* e = r.find(m, "jetson");
        REQUIRE(e);
        CHECK(e->total_latency == 0.126);
        CHECK(e->reject_reason == RejectReason::deadline);
    }
    CHECK(r.find("YOLO11x", "a5000")->total_latency == doctest::Approx(0.051));
    CHECK(r.find("YOLO11x", "a5000")->network_delay == 0.022);
    CHECK(r.find("YOLO11m", "jetson")->network_delay == 0.0);
}

TEST_CASE("per-kind selection reproduces the Table I choice")
{
    const auto r = feasibility_set(fixtures::table1(), {{"a5000", 0.022}});
    const auto device = select_optimal(restrict_to_kind(r, PlatformKind::device));
    const auto cloud = select_optimal(restrict_to_kind(r, PlatformKind::cloud));
    REQUIRE(device.selected);
    REQUIRE(cloud.selected);
    CHECK(device.selected->model_id == "YOLO11m");
    CHECK(cloud.selected->model_id == "YOLO11x");
    CHECK(cloud.selected->platform_id == "a5000");
}

TEST_CASE("energy budget rejects after the deadline check")
{
    const auto r = feasibility_set(fixtures::table1(0.022, 0.5), {{"a5000", 0.022}});
    CHECK(r.find("YOLO11m", "jetson")->reject_reason == RejectReason::energy);
    CHECK(r.find("YOLO11s", "jetson")->feasible);
    CHECK(r.find("YOLO11x", "jetson")->reject_reason == RejectReason::deadline);
    CHECK(r.find("YOLO11x", "a5000")->feasible);  // no cloud budget declared
}

TEST_CASE("deadline boundary is inclusive")
{
    std::vector<ModelProfile> profiles = {{"m", "d", 0.1, 0.1, 10.0}};
    const Catalog cat(profiles, {{"d", PlatformKind::device, std::nullopt, std::nullopt}}, SensingConfig{10.0, 0.0, 0.1}, {});
    CHECK(feasibility_set(cat, {}).evaluated[0].feasible);
}

TEST_CASE("control delay counts against the deadline")
{
    const auto cat = fixtures::table1().with_sensing(SensingConfig{10.0, 0.006, 0.1});
    const auto r = feasibility_set(cat, {{"a5000", 0.022}});
    CHECK(r.find("YOLO11m", "jetson")->total_latency == doctest::Approx(0.101));
    CHECK_FALSE(r.find("YOLO11m", "jetson")->feasible);
    CHECK(r.find("YOLO11s", "jetson")->feasible);
}

TEST_CASE("empty catalog gives an empty report")
{
    const auto r = select_optimal(feasibility_set(Catalog{}, {}));
    CHECK(r.evaluated.empty());
    CHECK_FALSE(r.selected);
}

TEST_CASE("ties break on latency, then energy, then name")
{
    const std::vector<PlatformSpec> platforms = {{"d", PlatformKind::device, std::nullopt, std::nullopt}};
    auto select = [&](std::vector<ModelProfile> profiles) {
        const Catalog cat(std::move(profiles), platforms, SensingConfig{10.0, 0.0, 0.1}, {});
        return select_optimal(feasibility_set(cat, {})).selected->model_id;
    };
    CHECK(select({{"slow", "d", 0.05, 0.1, 50.0}, {"fast", "d", 0.03, 0.1, 50.0}}) == "fast");
    CHECK(select({{"hungry", "d", 0.03, 0.9, 50.0}, {"frugal", "d", 0.03, 0.1, 50.0}}) == "frugal");
    CHECK(select({{"b", "d", 0.03, 0.1, 50.0}, {"a", "d", 0.03, 0.1, 50.0}}) == "a");
    CHECK(select({{"fast", "d", 0.03, 0.1, 49.9}, {"slow", "d", 0.05, 0.1, 50.0}}) == "slow");
}

TEST_CASE("amortized mode rejects saturated queues")
{
    const auto r = feasibility_set(fixtures::table1(), {{"a5000", 0.022}}, FeasibilityOptions{true});
    CHECK(r.amortized);
    CHECK(r.find("YOLO11x", "jetson")->reject_reason == RejectReason::unstable);
    CHECK(r.find("YOLO11l", "jetson")->reject_reason == RejectReason::unstable);
    CHECK(r.find("YOLO11m", "jetson")->reject_reason == RejectReason::deadline);
    CHECK(r.find("YOLO11m", "jetson")->inference_latency == doctest::Approx(1.9));
    CHECK(r.find("YOLO11x", "a5000")->feasible);
    CHECK(r.find("YOLO11x", "a5000")->inference_latency == doctest::Approx(0.029 / 0.71));
}

TEST_CASE("network point errors")
{
    const auto cat = fixtures::table1();
    CHECK_THROWS_AS(feasibility_set(cat, {{"a5000", 0.022}, {"elsewhere", 0.01}}), ConfigError);
    CHECK_THROWS_AS(feasibility_set(cat, {{"a5000", 0.022}, {"jetson", 0.01}}), ConfigError);
    CHECK_THROWS_AS(feasibility_set(cat, {}), ConfigError);
    CHECK_NOTHROW(feasibility_set(cat, {{"a5000", 0.022}, {"jetson", 0.0}}));
}

TEST_CASE("representative point reads sampler quantiles")
{
    const auto cat = load_catalog(fixtures::config_dir() / "table1.toml");
    CHECK(representative_network_point(cat).at("a5000") == 0.022);
    CHECK(representative_network_point(cat, 0.9).at("a5000") == 0.060);
    CHECK(representative_network_point(cat, 0.1).at("a5000") == 0.010);
    CHECK(representative_network_point(cat).count("jetson") == 0);
}

TEST_CASE("restrict keeps matching entries")
{
    const auto r = select_optimal(feasibility_set(fixtures::table1(), {{"a5000", 0.022}}));
    const auto only_x = restrict(r, [](const PairEvaluation& e) { return e.model_id == "YOLO11x"; });
    CHECK(only_x.evaluated.size() == 2);
    CHECK_FALSE(only_x.selected);
    CHECK(r.feasible_pairs().size() == 8);
}
