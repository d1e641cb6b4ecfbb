#pragma once

#include "placesim/catalog.hpp"
#include "placesim/kinematics.hpp"
#include "placesim/sim.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fixtures {

inline std::filesystem::path config_dir() { return PLACESIM_CONFIG_DIR; }

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Per-test scratch directory, emptied on creation.
inline std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("placesim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

/// Table I in code: five YOLO11 sizes on a cloud GPU and an embedded board.
inline placesim::Catalog table1(double cloud_rtt = 0.022, std::optional<double> device_budget = std::nullopt)
{
    using placesim::ModelProfile;
    std::vector<ModelProfile> profiles = {
        {"YOLO11x", "a5000", 0.029, 1.66, 54.7}, {"YOLO11x", "jetson", 0.126, 0.75, 54.7},
        {"YOLO11l", "a5000", 0.028, 1.27, 53.4}, {"YOLO11l", "jetson", 0.126, 0.75, 53.4},
        {"YOLO11m", "a5000", 0.021, 0.92, 51.5}, {"YOLO11m", "jetson", 0.095, 0.58, 51.5},
        {"YOLO11s", "a5000", 0.019, 0.76, 47.0}, {"YOLO11s", "jetson", 0.088, 0.43, 47.0},
        {"YOLO11n", "a5000", 0.019, 0.73, 39.5}, {"YOLO11n", "jetson", 0.079, 0.41, 39.5},
    };
    std::vector<placesim::PlatformSpec> platforms = {
        {"a5000", placesim::PlatformKind::cloud, std::nullopt, "lax"},
        {"jetson", placesim::PlatformKind::device, device_budget, std::nullopt},
    };
    std::map<std::string, placesim::net::LatencySampler> networks;
    networks.emplace("lax", placesim::net::LatencySampler::fixed(cloud_rtt));
    return placesim::Catalog(std::move(profiles), std::move(platforms), placesim::SensingConfig{10.0, 0.0, 0.1},
                             std::move(networks));
}

/// Deterministic braking run on a single platform.
inline placesim::sim::SimConfig braking_config(double speed, double decel, double inference, double rtt,
                                               double range, double visibility, double gap = 300.0)
{
    using namespace placesim;
    sim::SimConfig c;
    c.initial_gap = gap;
    c.initial_speed = speed;
    c.deceleration = decel;
    const bool cloud = rtt > 0.0;
    c.platform = PlatformSpec{cloud ? "cloud" : "device", cloud ? PlatformKind::cloud : PlatformKind::device,
                              std::nullopt, cloud ? std::optional<std::string>("net") : std::nullopt};
    c.profile = ModelProfile{"m", c.platform.platform_id, inference, 1.0, 50.0};
    if (cloud) c.network = net::LatencySampler::fixed(rtt);
    c.detection = sim::DetectionModel{range, 1.0, visibility};
    return c;
}

/// Long-road run: no obstacle, `frames` results, exponential service and Poisson capture.
inline placesim::sim::SimConfig open_road_config(double frame_rate, double inference, double rtt,
                                                 double background, std::uint64_t frames, std::uint64_t seed)
{
    auto c = braking_config(20.0, 6.0, inference, rtt, 100.0, 100.0, 1000.0);
    c.sensing = placesim::SensingConfig{frame_rate, 0.0, 1.0 / frame_rate};
    c.service = placesim::sim::ServiceDistribution::exponential;
    c.capture = placesim::sim::CaptureProcess::poisson;
    c.background_arrival_rate = background;
    c.braking_enabled = false;
    c.frame_limit = frames;
    c.record_events = false;
    c.seed = seed;
    return c;
}

/// Mean of received - captured - rtt over frames with a result.
inline double mean_queue_time(const placesim::sim::SimResult& r)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& f : r.frames) {
        if (!f.has_result()) continue;
        sum += f.received - f.captured - f.rtt;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

inline double mean_response(const placesim::sim::SimResult& r)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& f : r.frames) {
        if (!f.has_result()) continue;
        sum += f.received - f.captured;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace fixtures
