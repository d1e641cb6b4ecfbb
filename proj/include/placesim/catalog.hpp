#pragma once

// Model/platform performance profiles and the sensing configuration that drive
// placement analysis. A Catalog is immutable once loaded.

#include "placesim/netmodel.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace placesim {

enum class PlatformKind { device, cloud };

std::string to_string(PlatformKind k);
PlatformKind parse_platform_kind(const std::string& s);

struct ModelProfile {
    std::string model_id;
    std::string platform_id;
    double inference_latency = 0.0;     // s, mean
    double energy_per_inference = 0.0;  // J
    double accuracy = 0.0;              // accuracy points (e.g. COCO mAP), [0, 100]

    friend bool operator==(const ModelProfile&, const ModelProfile&) = default;
};

struct PlatformSpec {
    std::string platform_id;
    PlatformKind kind = PlatformKind::device;
    std::optional<double> energy_budget;  // J; absent means unconstrained
    std::optional<std::string> network_ref;  // cloud only

    friend bool operator==(const PlatformSpec&, const PlatformSpec&) = default;
};

struct SensingConfig {
    double frame_rate = 10.0;     // Hz
    double control_delay = 0.0;   // s
    double deadline = 0.1;        // s; 1/frame_rate unless configured

    double frame_interval() const { return 1.0 / frame_rate; }

    friend bool operator==(const SensingConfig&, const SensingConfig&) = default;
};

/// Throws ConfigError if frame_rate or deadline is not strictly positive or
/// control_delay is negative.
void validate(const SensingConfig& s);
void validate(const ModelProfile& p);

class Catalog {
public:
    Catalog() = default;

    /// Validates every invariant: per-item ranges, unique (model, platform) keys,
    /// unique platform ids, profiles resolving to a platform, cloud platforms
    /// referencing a declared network and device platforms declaring none.
    Catalog(std::vector<ModelProfile> profiles, std::vector<PlatformSpec> platforms, SensingConfig sensing,
            std::map<std::string, net::LatencySampler> networks);

    const std::vector<ModelProfile>& profiles() const noexcept { return profiles_; }
    const std::vector<PlatformSpec>& platforms() const noexcept { return platforms_; }
    const SensingConfig& sensing() const noexcept { return sensing_; }
    const std::map<std::string, net::LatencySampler>& networks() const noexcept { return networks_; }

    const PlatformSpec& platform(const std::string& id) const;  // ConfigError if unknown
    const ModelProfile& profile(const std::string& model, const std::string& platform) const;
    const net::LatencySampler& network(const std::string& name) const;

    /// The sampler a cloud platform routes through; nullptr for device platforms.
    const net::LatencySampler* network_for(const PlatformSpec& p) const;

    Catalog with_sensing(SensingConfig s) const;
    Catalog with_profiles(std::vector<ModelProfile> profiles) const;

    friend bool operator==(const Catalog&, const Catalog&) = default;

private:
    std::vector<ModelProfile> profiles_;
    std::vector<PlatformSpec> platforms_;
    SensingConfig sensing_;
    std::map<std::string, net::LatencySampler> networks_;
};

/// Parses the TOML catalog format. Relative `samples_file` paths in network
/// sections resolve against `base_dir`.
Catalog parse_catalog(const std::string& toml_text, const std::filesystem::path& base_dir = {},
                      const std::string& origin = "<catalog>");

Catalog load_catalog(const std::filesystem::path& path);

/// Canonical TOML rendering. Reloading the output yields an equal Catalog;
/// empirical networks are written inline.
std::string serialize_catalog(const Catalog& c);

}  // namespace placesim
