#include "placesim/errors.hpp"
#include "placesim/latency.hpp"

#include <doctest.h>

using namespace placesim;
using namespace placesim::latency;

TEST_CASE("total response latency is the plain sum")
{
    CHECK(total_response_latency(0.022, 0.029, 0.0) == doctest::Approx(0.051).epsilon(1e-15));
    CHECK(total_response_latency(0.0, 0.0, 0.0) == 0.0);
    CHECK(total_response_latency(0.0, 0.095, 0.005) == doctest::Approx(0.100).epsilon(1e-15));
    CHECK_THROWS_AS(total_response_latency(-0.001, 0.02, 0.0), DomainError);
    CHECK_THROWS_AS(total_response_latency(0.0, -0.02, 0.0), DomainError);
    CHECK_THROWS_AS(total_response_latency(0.0, 0.02, -1.0), DomainError);
}

TEST_CASE("amortized latency")
{
    CHECK(amortized_latency(0.095, 0.0) == 0.095);
    // 0.021 / 0.79
    CHECK(amortized_latency(0.021, 10.0) == doctest::Approx(0.0265822785).epsilon(1e-9));
    CHECK(amortized_latency(QueueModel{0.021, 10.0}) == amortized_latency(0.021, 10.0));
    CHECK_THROWS_AS(amortized_latency(0.126, 10.0), UnstableQueueError);
    CHECK_THROWS_AS(amortized_latency(0.1, 10.0), UnstableQueueError);
    CHECK_THROWS_AS(amortized_latency(0.0, 10.0), DomainError);
    CHECK_THROWS_AS(amortized_latency(0.05, -1.0), DomainError);

    try {
        amortized_latency(0.126, 10.0);
    } catch (const UnstableQueueError& e) {
        CHECK(e.utilization() == doctest::Approx(1.26));
    }
}

TEST_CASE("queue model stability")
{
    CHECK(QueueModel{0.095, 10.0}.stable());
    CHECK_FALSE(QueueModel{0.1, 10.0}.stable());
    CHECK(QueueModel{0.126, 10.0}.utilization() == doctest::Approx(1.26));
}

TEST_CASE("break-even network delay")
{
    // 0.095 / 0.05 - 0.021 / 0.79
    CHECK(cloud_break_even(0.095, 0.021, 10.0) == doctest::Approx(1.8734177215).epsilon(1e-9));
    CHECK(cloud_break_even(0.05, 0.05, 7.0) == 0.0);
    CHECK(cloud_break_even(0.095, 0.021, 0.0) == doctest::Approx(0.074).epsilon(1e-12));
    CHECK(cloud_break_even(0.02, 0.05, 5.0) < 0.0);
    CHECK_THROWS_AS(cloud_break_even(0.126, 0.021, 10.0), UnstableQueueError);
    CHECK_THROWS_AS(cloud_break_even(0.095, 0.126, 10.0), UnstableQueueError);
}

TEST_CASE("cloud preference is strict")
{
    CHECK(prefer_cloud(0.022, 0.095, 0.021, 10.0).prefer_cloud);
    const double boundary = cloud_break_even(0.095, 0.021, 10.0);
    CHECK_FALSE(prefer_cloud(boundary, 0.095, 0.021, 10.0).prefer_cloud);
    CHECK_FALSE(prefer_cloud(1.873418, 0.095, 0.021, 10.0).prefer_cloud);
    CHECK_FALSE(prefer_cloud(0.0, 0.095, 0.095, 10.0).prefer_cloud);
    CHECK_THROWS_AS(prefer_cloud(-0.01, 0.095, 0.021, 10.0), DomainError);
}

TEST_CASE("saturated cloud queue loses without throwing")
{
    const auto p = prefer_cloud(0.0, 0.095, 0.2, 10.0);
    CHECK_FALSE(p.prefer_cloud);
    CHECK(p.cloud_queue_unstable);
    CHECK_THROWS_AS(prefer_cloud(0.0, 0.126, 0.021, 10.0), UnstableQueueError);
}
