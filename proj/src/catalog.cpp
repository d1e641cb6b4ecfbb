#include "placesim/catalog.hpp"

#include "placesim/errors.hpp"
#include "toml_util.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace placesim {

std::string to_string(PlatformKind k) { return k == PlatformKind::device ? "device" : "cloud"; }

PlatformKind parse_platform_kind(const std::string& s)
{
    if (s == "device") return PlatformKind::device;
    if (s == "cloud") return PlatformKind::cloud;
    throw ConfigError("unknown platform kind '" + s + "' (expected device or cloud)");
}

void validate(const SensingConfig& s)
{
    if (!(s.frame_rate > 0.0) || !std::isfinite(s.frame_rate)) throw ConfigError("frame_rate_hz must be > 0");
    if (!(s.control_delay >= 0.0) || !std::isfinite(s.control_delay)) {
        throw ConfigError("control_delay_s must be >= 0");
    }
    if (!(s.deadline > 0.0) || !std::isfinite(s.deadline)) throw ConfigError("deadline_s must be > 0");
}

void validate(const ModelProfile& p)
{
    const std::string key = "(" + p.model_id + ", " + p.platform_id + ")";
    if (p.model_id.empty() || p.platform_id.empty()) throw ConfigError("profile needs model and platform ids");
    if (!(p.inference_latency > 0.0) || !std::isfinite(p.inference_latency)) {
        throw ConfigError("profile " + key + ": inference_latency_s must be > 0");
    }
    if (!(p.energy_per_inference >= 0.0) || !std::isfinite(p.energy_per_inference)) {
        throw ConfigError("profile " + key + ": energy_j must be >= 0");
    }
    if (!(p.accuracy >= 0.0 && p.accuracy <= 100.0)) {
        throw ConfigError("profile " + key + ": accuracy_map must lie in [0, 100]");
    }
}

Catalog::Catalog(std::vector<ModelProfile> profiles, std::vector<PlatformSpec> platforms, SensingConfig sensing,
                 std::map<std::string, net::LatencySampler> networks)
    : profiles_(std::move(profiles)),
      platforms_(std::move(platforms)),
      sensing_(sensing),
      networks_(std::move(networks))
{
    validate(sensing_);

    std::set<std::string> platform_ids;
    for (const auto& p : platforms_) {
        if (p.platform_id.empty()) throw ConfigError("platform id must not be empty");
        if (!platform_ids.insert(p.platform_id).second) {
            throw ConfigError("duplicate platform id '" + p.platform_id + "'");
        }
        if (p.energy_budget && (!(*p.energy_budget >= 0.0) || !std::isfinite(*p.energy_budget))) {
            throw ConfigError("platform '" + p.platform_id + "': energy_budget_j must be >= 0");
        }
        if (p.kind == PlatformKind::cloud) {
            if (!p.network_ref) throw ConfigError("cloud platform '" + p.platform_id + "' needs a network");
            if (!networks_.count(*p.network_ref)) {
                throw ConfigError("platform '" + p.platform_id + "' references unknown network '" +
                                  *p.network_ref + "'");
            }
        } else if (p.network_ref) {
            throw ConfigError("device platform '" + p.platform_id + "' must not declare a network");
        }
    }

    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& p : profiles_) {
        validate(p);
        if (!platform_ids.count(p.platform_id)) {
            throw ConfigError("profile (" + p.model_id + ", " + p.platform_id + ") references unknown platform");
        }
        if (!keys.emplace(p.model_id, p.platform_id).second) {
            throw ConfigError("duplicate profile (" + p.model_id + ", " + p.platform_id + ")");
        }
    }
}

const PlatformSpec& Catalog::platform(const std::string& id) const
{
    for (const auto& p : platforms_) {
        if (p.platform_id == id) return p;
    }
    throw ConfigError("unknown platform '" + id + "'");
}

const ModelProfile& Catalog::profile(const std::string& model, const std::string& platform) const
{
    for (const auto& p : profiles_) {
        if (p.model_id == model && p.platform_id == platform) return p;
    }
    throw ConfigError("no profile for (" + model + ", " + platform + ")");
}

const net::LatencySampler& Catalog::network(const std::string& name) const
{
    auto it = networks_.find(name);
    if (it == networks_.end()) throw ConfigError("unknown network '" + name + "'");
    return it->second;
}

const net::LatencySampler* Catalog::network_for(const PlatformSpec& p) const
{
    if (p.kind == PlatformKind::device || !p.network_ref) return nullptr;
    return &network(*p.network_ref);
}

Catalog Catalog::with_sensing(SensingConfig s) const { return Catalog(profiles_, platforms_, s, networks_); }

Catalog Catalog::with_profiles(std::vector<ModelProfile> profiles) const
{
    return Catalog(std::move(profiles), platforms_, sensing_, networks_);
}

namespace detail {

net::LatencySampler parse_network(const toml::table& t, const std::string& ctx,
                                  const std::filesystem::path& base_dir)
{
    const auto kind = req_string(t, "kind", ctx);
    try {
        if (kind == "fixed") {
            reject_unknown_keys(t, {"kind", "value_s"}, ctx);
            return net::LatencySampler::fixed(req_number(t, "value_s", ctx));
        }
        if (kind == "percentile") {
            reject_unknown_keys(t, {"kind", "p10_s", "p50_s", "p90_s", "mode"}, ctx);
            const auto mode = opt_string(t, "mode", ctx).value_or("p50");
            return net::LatencySampler::percentile_table(req_number(t, "p10_s", ctx), req_number(t, "p50_s", ctx),
                                                         req_number(t, "p90_s", ctx),
                                                         net::parse_percentile_mode(mode));
        }
        if (kind == "empirical") {
            reject_unknown_keys(t, {"kind", "samples_s", "samples_file"}, ctx);
            auto inline_samples = opt_number_array(t, "samples_s", ctx);
            auto file = opt_string(t, "samples_file", ctx);
            if (inline_samples.has_value() == file.has_value()) {
                throw ConfigError("'" + ctx + "' needs exactly one of samples_s or samples_file");
            }
            if (file) {
                std::filesystem::path p(*file);
                if (p.is_relative()) p = base_dir / p;
                return net::load_samples(p);
            }
            return net::LatencySampler::empirical(std::move(*inline_samples));
        }
        if (kind == "lognormal") {
            reject_unknown_keys(t, {"kind", "location_s", "log_mean", "log_sigma"}, ctx);
            return net::LatencySampler::shifted_lognormal(opt_number(t, "location_s", ctx).value_or(0.0),
                                                          req_number(t, "log_mean", ctx),
                                                          req_number(t, "log_sigma", ctx));
        }
    } catch (const DomainError& e) {
        throw ConfigError("'" + ctx + "': " + e.what());
    }
    throw ConfigError("'" + ctx + "': unknown network kind '" + kind +
                      "' (expected fixed, percentile, empirical or lognormal)");
}

std::string render_network(const net::LatencySampler& s)
{
    std::ostringstream os;
    std::visit(
        [&os](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, net::FixedDelay>) {
                os << "kind = \"fixed\"\nvalue_s = " << format_float(v.value) << "\n";
            } else if constexpr (std::is_same_v<T, net::PercentileTable>) {
                os << "kind = \"percentile\"\np10_s = " << format_float(v.p10) << "\np50_s = " << format_float(v.p50)
                   << "\np90_s = " << format_float(v.p90) << "\nmode = " << quote(net::to_string(v.mode)) << "\n";
            } else if constexpr (std::is_same_v<T, net::EmpiricalDelay>) {
                os << "kind = \"empirical\"\nsamples_s = [";
                for (std::size_t i = 0; i < v.samples.size(); ++i) {
                    os << (i ? ", " : "") << format_float(v.samples[i]);
                }
                os << "]\n";
            } else {
                os << "kind = \"lognormal\"\nlocation_s = " << format_float(v.location)
                   << "\nlog_mean = " << format_float(v.log_mean) << "\nlog_sigma = " << format_float(v.log_sigma)
                   << "\n";
            }
        },
        s.variant());
    return os.str();
}

}  // namespace detail

Catalog parse_catalog(const std::string& toml_text, const std::filesystem::path& base_dir, const std::string& origin)
{
    using namespace detail;
    const toml::table root = parse_toml(toml_text, origin);
    reject_unknown_keys(root, {"sensing", "network", "platform", "profile"}, "");

    SensingConfig sensing;
    if (const auto* s = opt_table(root, "sensing", "")) {
        reject_unknown_keys(*s, {"frame_rate_hz", "control_delay_s", "deadline_s"}, "sensing");
        sensing.frame_rate = opt_number(*s, "frame_rate_hz", "sensing").value_or(sensing.frame_rate);
        sensing.control_delay = opt_number(*s, "control_delay_s", "sensing").value_or(0.0);
        if (!(sensing.frame_rate > 0.0)) throw ConfigError("sensing.frame_rate_hz must be > 0");
        sensing.deadline = opt_number(*s, "deadline_s", "sensing").value_or(1.0 / sensing.frame_rate);
    }

    std::map<std::string, net::LatencySampler> networks;
    if (const auto* nets = opt_table(root, "network", "")) {
        for (const auto& [name, node] : *nets) {
            const std::string ctx = "network." + std::string(name.str());
            const auto* tbl = node.as_table();
            if (!tbl) throw ConfigError("'" + ctx + "' must be a table");
            networks.emplace(std::string(name.str()), parse_network(*tbl, ctx, base_dir));
        }
    }

    auto table_array = [&root](std::string_view key) -> const toml::array* {
        const auto* node = root.get(key);
        if (!node) return nullptr;
        const auto* arr = node->as_array();
        if (!arr || !arr->is_array_of_tables()) {
            throw ConfigError("'" + std::string(key) + "' must be an array of tables ([[" + std::string(key) + "]])");
        }
        return arr;
    };

    std::vector<PlatformSpec> platforms;
    if (const auto* arr = table_array("platform")) {
        std::size_t i = 0;
        for (const auto& node : *arr) {
            const auto& t = *node.as_table();
            const std::string ctx = "platform[" + std::to_string(i++) + "]";
            reject_unknown_keys(t, {"id", "kind", "energy_budget_j", "network"}, ctx);
            PlatformSpec p;
            p.platform_id = req_string(t, "id", ctx);
            p.kind = parse_platform_kind(req_string(t, "kind", ctx));
            p.energy_budget = opt_number(t, "energy_budget_j", ctx);
            p.network_ref = opt_string(t, "network", ctx);
            platforms.push_back(std::move(p));
        }
    }

    std::vector<ModelProfile> profiles;
    if (const auto* arr = table_array("profile")) {
        std::size_t i = 0;
        for (const auto& node : *arr) {
            const auto& t = *node.as_table();
            const std::string ctx = "profile[" + std::to_string(i++) + "]";
            reject_unknown_keys(t, {"model", "platform", "inference_latency_s", "energy_j", "accuracy_map"}, ctx);
            ModelProfile p;
            p.model_id = req_string(t, "model", ctx);
            p.platform_id = req_string(t, "platform", ctx);
            p.inference_latency = req_number(t, "inference_latency_s", ctx);
            p.energy_per_inference = opt_number(t, "energy_j", ctx).value_or(0.0);
            p.accuracy = req_number(t, "accuracy_map", ctx);
            profiles.push_back(std::move(p));
        }
    }

    return Catalog(std::move(profiles), std::move(platforms), sensing, std::move(networks));
}

Catalog load_catalog(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open catalog " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path.parent_path(), path.string());
}

std::string serialize_catalog(const Catalog& c)
{
    using detail::format_float;
    using detail::quote;
    std::ostringstream os;
    const auto& s = c.sensing();
    os << "[sensing]\nframe_rate_hz = " << format_float(s.frame_rate) << "\ncontrol_delay_s = "
       << format_float(s.control_delay) << "\ndeadline_s = " << format_float(s.deadline) << "\n";

    for (const auto& [name, sampler] : c.networks()) {
        os << "\n[network." << quote(name) << "]\n" << detail::render_network(sampler);
    }
    for (const auto& p : c.platforms()) {
        os << "\n[[platform]]\nid = " << quote(p.platform_id) << "\nkind = " << quote(to_string(p.kind)) << "\n";
        if (p.energy_budget) os << "energy_budget_j = " << format_float(*p.energy_budget) << "\n";
        if (p.network_ref) os << "network = " << quote(*p.network_ref) << "\n";
    }
    for (const auto& p : c.profiles()) {
        os << "\n[[profile]]\nmodel = " << quote(p.model_id) << "\nplatform = " << quote(p.platform_id)
           << "\ninference_latency_s = " << format_float(p.inference_latency)
           << "\nenergy_j = " << format_float(p.energy_per_inference)
           << "\naccuracy_map = " << format_float(p.accuracy) << "\n";
    }
    return os.str();
}

}  // namespace placesim
