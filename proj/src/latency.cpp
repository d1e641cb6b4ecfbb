#include "placesim/latency.hpp"

#include "placesim/errors.hpp"

#include <cmath>

namespace placesim::latency {

double total_response_latency(double network_delay, double inference_latency, double control_delay)
{
    if (!(network_delay >= 0.0) || !(inference_latency >= 0.0) || !(control_delay >= 0.0)) {
        throw DomainError("response latency terms must be non-negative");
    }
    return network_delay + inference_latency + control_delay;
}

double amortized_latency(double service_time, double arrival_rate)
{
    if (!(service_time > 0.0) || !std::isfinite(service_time)) throw DomainError("service time must be > 0");
    if (!(arrival_rate >= 0.0) || !std::isfinite(arrival_rate)) throw DomainError("arrival rate must be >= 0");
    const double rho = service_time * arrival_rate;
    if (rho >= 1.0) throw UnstableQueueError(service_time, arrival_rate);
    return service_time / (1.0 - rho);
}

double cloud_break_even(double device_service, double cloud_service, double arrival_rate)
{
    return amortized_latency(device_service, arrival_rate) - amortized_latency(cloud_service, arrival_rate);
}

CloudPreference prefer_cloud(double network_rtt, double device_service, double cloud_service, double arrival_rate)
{
    if (!(network_rtt >= 0.0)) throw DomainError("network RTT must be non-negative");
    const double device = amortized_latency(device_service, arrival_rate);

    if (!(cloud_service > 0.0)) throw DomainError("service time must be > 0");
    if (cloud_service * arrival_rate >= 1.0) return {false, true};

    return {network_rtt < device - amortized_latency(cloud_service, arrival_rate), false};
}

}  // namespace placesim::latency
