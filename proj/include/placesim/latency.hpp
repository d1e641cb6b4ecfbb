#pragma once

// Response-latency arithmetic: the raw per-pair sum, the M/M/1 queue-amortized
// service time and the cloud-versus-device break-even network delay.
//
// All quantities are seconds (or Hz for rates). Functions are pure.

namespace placesim::latency {

struct QueueModel {
    double service_time = 0.0;  // s, mean
    double arrival_rate = 0.0;  // Hz

    double utilization() const { return service_time * arrival_rate; }
    bool stable() const { return utilization() < 1.0; }
};

/// network + inference + control. Throws DomainError on any negative input.
double total_response_latency(double network_delay, double inference_latency, double control_delay);

/// Mean time in an M/M/1 system, service_time / (1 - arrival_rate * service_time).
/// Throws DomainError for service_time <= 0 or arrival_rate < 0 and
/// UnstableQueueError once utilization reaches 1.
double amortized_latency(double service_time, double arrival_rate);
inline double amortized_latency(const QueueModel& q) { return amortized_latency(q.service_time, q.arrival_rate); }

/// amortized(device) - amortized(cloud). Any round trip strictly below this makes
/// the cloud faster. Negative when the cloud is the slower platform.
double cloud_break_even(double device_service, double cloud_service, double arrival_rate);

struct CloudPreference {
    bool prefer_cloud = false;
    /// Set when the cloud queue is saturated; the device wins by default.
    bool cloud_queue_unstable = false;
};

/// True iff network_rtt < cloud_break_even(...). Ties go to the device.
/// Throws DomainError on negative RTT and UnstableQueueError if the device queue
/// is saturated.
CloudPreference prefer_cloud(double network_rtt, double device_service, double cloud_service, double arrival_rate);

}  // namespace placesim::latency
