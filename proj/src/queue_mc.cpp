#include "placesim/queue_mc.hpp"

#include "placesim/errors.hpp"
#include "placesim/netmodel.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include <omp.h>

namespace placesim::queue_mc {

Mm1Stats simulate_mm1(double arrival_rate, double mean_service, std::uint64_t customers, std::uint64_t seed)
{
    if (!(arrival_rate > 0.0) || !std::isfinite(arrival_rate)) throw DomainError("arrival rate must be > 0");
    if (!(mean_service > 0.0) || !std::isfinite(mean_service)) throw DomainError("mean service must be > 0");
    if (customers < 1) throw DomainError("need at least one customer");

    auto arrivals_rng = net::make_stream(seed, 1);
    auto service_rng = net::make_stream(seed, 2);
    std::exponential_distribution<double> interarrival(arrival_rate);
    std::exponential_distribution<double> service(1.0 / mean_service);

    const auto warmup = static_cast<std::uint64_t>(std::floor(kWarmupFraction * static_cast<double>(customers)));

    struct Waiting {
        std::uint64_t index;
        double arrival;
    };
    std::deque<Waiting> system;  // front is in service

    constexpr double never = std::numeric_limits<double>::infinity();
    double now = 0.0;
    double next_arrival = interarrival(arrivals_rng);
    double next_departure = never;
    double service_started = 0.0;
    std::uint64_t arrived = 0;
    std::uint64_t departed = 0;

    // Measurement window opens when the first counted customer arrives.
    bool measuring = false;
    double window_start = 0.0;
    double area = 0.0;  // integral of number-in-system
    double busy = 0.0;

    double sojourn_sum = 0.0;
    double wait_sum = 0.0;
    std::uint64_t counted = 0;

    auto advance = [&](double t) {
        if (measuring) {
            area += static_cast<double>(system.size()) * (t - now);
            if (!system.empty()) busy += t - now;
        }
        now = t;
    };

    while (departed < customers) {
        if (next_arrival < next_departure) {
            advance(next_arrival);
            if (arrived == warmup && !measuring) {
                measuring = true;
                window_start = now;
            }
            system.push_back({arrived++, now});
            if (system.size() == 1) {
                service_started = now;
                next_departure = now + service(service_rng);
            }
            next_arrival = now + interarrival(arrivals_rng);
        } else {
            advance(next_departure);
            const auto done = system.front();
            system.pop_front();
            ++departed;
            if (done.index >= warmup) {
                sojourn_sum += now - done.arrival;
                wait_sum += service_started - done.arrival;
                ++counted;
            }
            if (system.empty()) {
                next_departure = never;
            } else {
                service_started = now;
                next_departure = now + service(service_rng);
            }
        }
    }

    Mm1Stats s;
    s.customers_served = counted;
    s.arrival_rate = arrival_rate;
    s.mean_service = mean_service;
    s.seed = seed;
    s.diverged = arrival_rate * mean_service >= 1.0;
    if (counted > 0) {
        s.mean_sojourn = sojourn_sum / static_cast<double>(counted);
        s.mean_wait = wait_sum / static_cast<double>(counted);
    }
    const double window = now - window_start;
    if (measuring && window > 0.0) {
        s.mean_in_system = area / window;
        s.utilization_observed = busy / window;
    }
    return s;
}

std::vector<Mm1Stats> replicate_serial(double arrival_rate, double mean_service, std::uint64_t customers,
                                       std::span<const std::uint64_t> seeds)
{
    std::vector<Mm1Stats> out;
    out.reserve(seeds.size());
    for (auto seed : seeds) out.push_back(simulate_mm1(arrival_rate, mean_service, customers, seed));
    return out;
}

std::vector<Mm1Stats> replicate_parallel(double arrival_rate, double mean_service, std::uint64_t customers,
                                         std::span<const std::uint64_t> seeds, int threads)
{
    // Validate up front so no exception escapes an OpenMP region.
    if (!seeds.empty()) simulate_mm1(arrival_rate, mean_service, 1, seeds.front());

    std::vector<Mm1Stats> out(seeds.size());
    const auto n = static_cast<std::int64_t>(seeds.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = simulate_mm1(arrival_rate, mean_service, customers, seeds[i]);
    }
    return out;
}

}  // namespace placesim::queue_mc
