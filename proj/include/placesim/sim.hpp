#pragma once

// Event-driven simulation of one perception-to-action braking run.
//
// Frames are captured periodically (or as a Poisson stream) while the brake is
// not yet applied. Each frame travels half its sampled round trip to the
// platform, waits in a FIFO single-server queue that may also carry Poisson
// background jobs, is served, and travels the other half back. Results are
// consumed in frame order; once `confirm_frames` consecutive detecting frames
// have been seen the brake command goes out, takes effect control_delay later,
// and the vehicle decelerates until it stops or reaches the obstacle.

#include "placesim/catalog.hpp"
#include "placesim/netmodel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace placesim::sim {

struct DetectionModel {
    double detection_range = 0.0;   // m; the deployed model can see the obstacle at or below this
    double per_frame_probability = 1.0;
    double visibility_range = 0.0;  // m; obstacle first becomes detectable in principle (t_obs)
};

enum class ServiceDistribution { deterministic, exponential };
enum class CaptureProcess { periodic, poisson };

std::string to_string(ServiceDistribution d);
std::string to_string(CaptureProcess c);
ServiceDistribution parse_service_distribution(const std::string& s);
CaptureProcess parse_capture_process(const std::string& s);

/// Piecewise-linear clients -> latency multiplier curve for a contended platform.
/// Clamped outside the first and last points.
class ContentionTable {
public:
    ContentionTable() = default;
    explicit ContentionTable(std::vector<std::pair<double, double>> points);

    double multiplier(double clients) const;
    const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }
    bool empty() const noexcept { return points_.empty(); }

private:
    std::vector<std::pair<double, double>> points_;
};

struct SimConfig {
    double initial_gap = 300.0;   // m, vehicle to obstacle at t = 0
    double initial_speed = 0.0;   // m/s
    double deceleration = 0.0;    // m/s^2
    ModelProfile profile;
    PlatformSpec platform;
    SensingConfig sensing;
    std::optional<net::LatencySampler> network;  // required for cloud, ignored for device
    DetectionModel detection;
    int confirm_frames = 1;
    ServiceDistribution service = ServiceDistribution::deterministic;
    double background_arrival_rate = 0.0;  // Hz
    double inference_scale = 1.0;          // contention inflation applied to the profile latency
    CaptureProcess capture = CaptureProcess::periodic;
    std::uint64_t seed = 0;

    /// Long-road mode: with braking disabled the obstacle is ignored and the run ends
    /// after `frame_limit` results have come back.
    bool braking_enabled = true;
    std::uint64_t frame_limit = 0;  // 0 = unlimited (braking runs only)
    bool record_events = true;

    double mean_service_time() const { return profile.inference_latency * inference_scale; }
    double horizon() const { return initial_gap / initial_speed + 60.0; }
};

/// Throws ConfigError on any violated invariant.
void validate(const SimConfig& c);

enum class EventKind {
    FrameCaptured,
    FrameArrivedAtPlatform,
    InferenceStarted,
    InferenceCompleted,
    ResultReceived,
    BrakeIssued,
    VehicleStopped,
    Collision,
};

std::string to_string(EventKind k);

struct SimEvent {
    double time = 0.0;
    EventKind kind = EventKind::FrameCaptured;
    std::optional<std::uint64_t> frame;
    double vehicle_position = 0.0;
    double obstacle_distance = 0.0;

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

/// Per-frame lifecycle timestamps.
struct FrameRecord {
    std::uint64_t index = 0;
    double captured = 0.0;
    double rtt = 0.0;
    double arrived = -1.0;
    double started = -1.0;
    double completed = -1.0;
    double received = -1.0;  // < 0 while still in flight when the run ended
    bool detecting = false;

    bool has_result() const { return received >= 0.0; }
    friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

enum class Outcome { safe, collision, open_road };
std::string to_string(Outcome o);

struct SimResult {
    std::vector<SimEvent> events;
    std::vector<FrameRecord> frames;

    std::optional<double> t_obs;
    std::optional<double> t_det;
    std::optional<double> t_brake_issued;
    std::optional<double> t_brake;  // brake force applied
    std::optional<double> t_stop;
    std::optional<double> t_collision;

    std::optional<double> d_capture;  // obstacle distance when the first frame of the confirming streak was captured
    std::optional<double> d_brake;    // obstacle distance when braking force is applied
    /// Final obstacle distance of the braking trajectory. On collision this is the
    /// non-positive overshoot the unobstructed stop would have had.
    std::optional<double> d_stop;
    std::optional<double> detection_delay;  // t_det - t_obs

    std::optional<std::uint64_t> trigger_frame;  // first frame of the confirming streak
    Outcome outcome = Outcome::open_road;
    double margin = 0.0;  // d_stop when present
    std::uint64_t dispatched_frames = 0;
    double total_inference_energy = 0.0;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Runs one simulation. Throws ConfigError for invalid configs and HorizonError when
/// a braking run passes initial_gap / initial_speed + 60 s without terminating.
SimResult run(const SimConfig& config);

}  // namespace placesim::sim
