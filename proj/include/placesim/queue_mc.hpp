#pragma once

// Event-driven Monte Carlo of a single-server FIFO queue with Poisson arrivals
// and exponential service (M/M/1). Serves as an independent check on the
// closed-form amortized latency.

#include <cstdint>
#include <span>
#include <vector>

namespace placesim::queue_mc {

/// Fraction of the first customers excluded from every average.
inline constexpr double kWarmupFraction = 0.10;

struct Mm1Stats {
    std::uint64_t customers_served = 0;  // customers counted after warm-up
    double mean_sojourn = 0.0;           // s, wait + service
    double mean_wait = 0.0;              // s, time in queue before service
    double utilization_observed = 0.0;   // busy fraction over the measurement window
    double mean_in_system = 0.0;         // time-averaged number in system over the same window
    double arrival_rate = 0.0;
    double mean_service = 0.0;
    std::uint64_t seed = 0;
    bool diverged = false;  // arrival_rate * mean_service >= 1

    friend bool operator==(const Mm1Stats&, const Mm1Stats&) = default;
};

/// Runs until `customers` have departed. Throws DomainError for non-positive rates,
/// service times or customer counts.
Mm1Stats simulate_mm1(double arrival_rate, double mean_service, std::uint64_t customers, std::uint64_t seed);

/// Independent replications, one per seed, in seed order. The serial version is the
/// reference; the parallel version distributes seeds over OpenMP threads and must
/// return identical results.
std::vector<Mm1Stats> replicate_serial(double arrival_rate, double mean_service, std::uint64_t customers,
                                       std::span<const std::uint64_t> seeds);
std::vector<Mm1Stats> replicate_parallel(double arrival_rate, double mean_service, std::uint64_t customers,
                                         std::span<const std::uint64_t> seeds, int threads = 0);

}  // namespace placesim::queue_mc
