#include "properties.hpp"

#include <doctest.h>

namespace {

void check(const char* name)
{
    const auto o = props::run(name);
    INFO(o.name, " (", o.cases, " cases): ", o.detail);
    CHECK(o.passed);
}

}  // namespace

TEST_CASE("property: netmodel")
{
    check("netmodel.non_negative");
    check("netmodel.empirical_cdf");
    check("netmodel.percentile_monotone");
    check("netmodel.reproducible");
}

TEST_CASE("property: latency")
{
    check("latency.zero_rate");
    check("latency.increasing");
    check("latency.diverges");
    check("latency.prefer_cloud");
    check("latency.break_even_rate");
    check("latency.identity");
}

TEST_CASE("property: feasibility")
{
    check("feasibility.growth");
    check("feasibility.argmax_scale");
    check("feasibility.deadline");
    check("feasibility.selection");
}

TEST_CASE("property: kinematics")
{
    check("kinematics.monotone");
    check("kinematics.static_safety");
    check("kinematics.budget_root");
    check("kinematics.mph");
}

TEST_CASE("property: catalog")
{
    check("catalog.round_trip");
    check("catalog.resolve");
}

TEST_CASE("property: queue")
{
    check("queue.closed_form");
    check("queue.little");
    check("queue.reproducible");
}

TEST_CASE("property: sim")
{
    check("sim.closed_form");
    check("sim.quantization");
    check("sim.ordered");
    check("sim.idle_queue");
    check("sim.queue_consistency");
    check("sim.reproducible");
    check("sim.energy");
    check("sim.safety");
}

TEST_CASE("property: sweep and cli")
{
    check("sweep.parallel");
    check("cli.byte_identical");
}

TEST_CASE("property: every registered property is exercised")
{
    CHECK(props::all().size() == 33);
}
