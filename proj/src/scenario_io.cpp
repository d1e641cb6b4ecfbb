#include "placesim/scenario.hpp"

#include "placesim/errors.hpp"
#include "toml_util.hpp"

#include <fstream>
#include <sstream>

namespace placesim {

namespace {

using namespace detail;

double read_speed(const toml::table& t, const std::string& ctx, std::optional<double> fallback)
{
    const auto mps = opt_number(t, "speed_mps", ctx);
    const auto mph = opt_number(t, "speed_mph", ctx);
    if (mps && mph) throw ConfigError("'" + ctx + "' sets both speed_mps and speed_mph");
    if (mps) return *mps;
    if (mph) return kinematics::mph_to_mps(*mph);
    if (fallback) return *fallback;
    throw ConfigError("'" + ctx + "' needs speed_mps or speed_mph");
}

const kinematics::VehicleClass& find_vehicle(const std::vector<kinematics::VehicleClass>& vs,
                                             const std::string& name)
{
    for (const auto& v : vs) {
        if (v.name == name) return v;
    }
    throw ConfigError("unknown vehicle class '" + name + "'");
}

std::vector<std::uint64_t> read_seeds(const toml::table& t, const std::string& ctx)
{
    std::vector<std::uint64_t> out;
    const auto* node = t.get("seeds");
    if (!node) return out;
    const auto* arr = node->as_array();
    if (!arr) throw ConfigError("'" + ctx + ".seeds' must be an array of integers");
    for (const auto& el : *arr) {
        auto v = el.value_exact<std::int64_t>();
        if (!v || *v < 0) throw ConfigError("'" + ctx + ".seeds' must hold non-negative integers");
        out.push_back(static_cast<std::uint64_t>(*v));
    }
    return out;
}

SweepGrid parse_sweep(const toml::table& t, const std::string& ctx)
{
    reject_unknown_keys(t,
                        {"deployments", "vehicles", "speeds_mps", "speeds_mph", "networks", "detection_ranges_m",
                         "background_rates_hz", "seeds"},
                        ctx);
    SweepGrid g;
    if (const auto* node = t.get("deployments")) {
        const auto* arr = node->as_array();
        if (!arr) throw ConfigError("'" + ctx + ".deployments' must be an array of tables");
        std::size_t i = 0;
        for (const auto& el : *arr) {
            const auto* d = el.as_table();
            const std::string dctx = ctx + ".deployments[" + std::to_string(i++) + "]";
            if (!d) throw ConfigError("'" + dctx + "' must be a table");
            reject_unknown_keys(*d, {"model", "platform", "range_m"}, dctx);
            g.deployments.push_back(
                {req_string(*d, "model", dctx), req_string(*d, "platform", dctx), opt_number(*d, "range_m", dctx)});
        }
    }
    g.vehicles = opt_string_array(t, "vehicles", ctx).value_or(std::vector<std::string>{});
    const auto mps = opt_number_array(t, "speeds_mps", ctx);
    const auto mph = opt_number_array(t, "speeds_mph", ctx);
    if (mps && mph) throw ConfigError("'" + ctx + "' sets both speeds_mps and speeds_mph");
    if (mps) g.speeds = *mps;
    if (mph) {
        for (double v : *mph) g.speeds.push_back(kinematics::mph_to_mps(v));
    }
    g.networks = opt_string_array(t, "networks", ctx).value_or(std::vector<std::string>{});
    g.detection_ranges = opt_number_array(t, "detection_ranges_m", ctx).value_or(std::vector<double>{});
    g.background_rates = opt_number_array(t, "background_rates_hz", ctx).value_or(std::vector<double>{});
    g.seeds = read_seeds(t, ctx);
    return g;
}

std::string join_numbers(const std::vector<double>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_float(v[i]);
    return s + "]";
}

std::string join_strings(const std::vector<std::string>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + quote(v[i]);
    return s + "]";
}

}  // namespace

ScenarioFile parse_scenario_file(const std::string& toml_text, const std::filesystem::path& base_dir,
                                 const std::string& origin)
{
    const toml::table root = parse_toml(toml_text, origin);
    reject_unknown_keys(root, {"catalog", "scenario", "detection", "sim", "vehicle", "contention", "sweep"}, "");

    ScenarioFile f;
    {
        std::filesystem::path cat(req_string(root, "catalog", ""));
        if (cat.is_relative()) cat = base_dir / cat;
        f.catalog = load_catalog(cat);
    }

    f.vehicles = kinematics::default_vehicle_classes();
    if (const auto* vt = opt_table(root, "vehicle", "")) {
        for (const auto& [name, node] : *vt) {
            const std::string ctx = "vehicle." + std::string(name.str());
            const auto* t = node.as_table();
            if (!t) throw ConfigError("'" + ctx + "' must be a table");
            reject_unknown_keys(*t, {"decel_mps2", "speeds_mph", "speeds_mps"}, ctx);
            kinematics::VehicleClass vc;
            vc.name = std::string(name.str());
            vc.deceleration = req_number(*t, "decel_mps2", ctx);
            if (!(vc.deceleration > 0.0)) throw ConfigError("'" + ctx + ".decel_mps2' must be > 0");
            if (auto mph = opt_number_array(*t, "speeds_mph", ctx)) {
                for (double v : *mph) vc.speed_presets.push_back(kinematics::mph_to_mps(v));
            }
            if (auto mps = opt_number_array(*t, "speeds_mps", ctx)) {
                vc.speed_presets.insert(vc.speed_presets.end(), mps->begin(), mps->end());
            }
            bool replaced = false;
            for (auto& existing : f.vehicles) {
                if (existing.name == vc.name) {
                    existing = vc;
                    replaced = true;
                }
            }
            if (!replaced) f.vehicles.push_back(vc);
        }
    }

    if (const auto* ct = opt_table(root, "contention", "")) {
        for (const auto& [platform, node] : *ct) {
            const std::string ctx = "contention." + std::string(platform.str());
            const auto* t = node.as_table();
            if (!t) throw ConfigError("'" + ctx + "' must be a table");
            reject_unknown_keys(*t, {"points"}, ctx);
            const auto* arr = t->get_as<toml::array>("points");
            if (!arr) throw ConfigError("'" + ctx + ".points' must be an array of [clients, multiplier] pairs");
            std::vector<std::pair<double, double>> pts;
            for (const auto& el : *arr) {
                const auto* pair = el.as_array();
                if (!pair || pair->size() != 2) {
                    throw ConfigError("'" + ctx + ".points' entries must be [clients, multiplier]");
                }
                auto num = [&ctx](const toml::node& n) {
                    if (auto d = n.value<double>()) return *d;
                    throw ConfigError("'" + ctx + ".points' entries must be numeric");
                };
                pts.emplace_back(num((*pair)[0]), num((*pair)[1]));
            }
            f.catalog.platform(std::string(platform.str()));
            f.contention.emplace(std::string(platform.str()), sim::ContentionTable(std::move(pts)));
        }
    }

    const auto* st = opt_table(root, "scenario", "");
    if (!st) throw ConfigError(origin + ": missing [scenario] section");
    reject_unknown_keys(*st,
                        {"gap_m", "speed_mps", "speed_mph", "decel_mps2", "vehicle", "model", "platform", "network",
                         "rtt_s"},
                        "scenario");
    Scenario& s = f.scenario;
    s.initial_gap = opt_number(*st, "gap_m", "scenario").value_or(300.0);
    s.initial_speed = read_speed(*st, "scenario", std::nullopt);
    s.vehicle = opt_string(*st, "vehicle", "scenario").value_or("");
    const auto decel = opt_number(*st, "decel_mps2", "scenario");
    if (decel && !s.vehicle.empty()) throw ConfigError("'scenario' sets both decel_mps2 and vehicle");
    if (decel) {
        s.deceleration = *decel;
    } else if (!s.vehicle.empty()) {
        s.deceleration = find_vehicle(f.vehicles, s.vehicle).deceleration;
    } else {
        throw ConfigError("'scenario' needs decel_mps2 or vehicle");
    }
    s.model = req_string(*st, "model", "scenario");
    s.platform = req_string(*st, "platform", "scenario");
    s.network = opt_string(*st, "network", "scenario").value_or("");
    s.fixed_rtt = opt_number(*st, "rtt_s", "scenario");

    const auto* dt = opt_table(root, "detection", "");
    if (!dt) throw ConfigError(origin + ": missing [detection] section");
    reject_unknown_keys(*dt, {"range_m", "visibility_m", "probability"}, "detection");
    s.detection.detection_range = req_number(*dt, "range_m", "detection");
    s.detection.visibility_range = opt_number(*dt, "visibility_m", "detection").value_or(s.detection.detection_range);
    s.detection.per_frame_probability = opt_number(*dt, "probability", "detection").value_or(1.0);

    if (const auto* sim = opt_table(root, "sim", "")) {
        reject_unknown_keys(*sim,
                            {"confirm_frames", "service", "background_rate_hz", "capture", "concurrent_clients", "seed"},
                            "sim");
        s.confirm_frames = static_cast<int>(opt_integer(*sim, "confirm_frames", "sim").value_or(1));
        if (auto v = opt_string(*sim, "service", "sim")) s.service = sim::parse_service_distribution(*v);
        s.background_arrival_rate = opt_number(*sim, "background_rate_hz", "sim").value_or(0.0);
        if (auto v = opt_string(*sim, "capture", "sim")) s.capture = sim::parse_capture_process(*v);
        s.concurrent_clients = opt_number(*sim, "concurrent_clients", "sim").value_or(0.0);
        const auto seed = opt_integer(*sim, "seed", "sim").value_or(0);
        if (seed < 0) throw ConfigError("'sim.seed' must be >= 0");
        s.seed = static_cast<std::uint64_t>(seed);
    }

    if (const auto* sw = opt_table(root, "sweep", "")) f.sweep = parse_sweep(*sw, "sweep");
    return f;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_file(buf.str(), path.parent_path(), path.string());
}

namespace {

struct NetworkChoice {
    std::optional<net::LatencySampler> sampler;
    std::string label;
};

NetworkChoice choose_network(const ScenarioFile& file, const Scenario& s, const PlatformSpec& platform)
{
    if (platform.kind == PlatformKind::device) return {std::nullopt, "none"};

    if (s.fixed_rtt) {
        try {
            return {net::LatencySampler::fixed(*s.fixed_rtt), "fixed:" + format_float(*s.fixed_rtt)};
        } catch (const DomainError& e) {
            throw ConfigError(std::string("rtt_s: ") + e.what());
        }
    }

    std::string selector = s.network;
    if (selector.empty()) selector = *platform.network_ref;

    const auto colon = selector.find(':');
    const std::string name = selector.substr(0, colon);
    const std::string suffix = colon == std::string::npos ? "" : selector.substr(colon + 1);

    if (name == "fixed") {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), v);
        if (ec != std::errc{} || ptr != suffix.data() + suffix.size() || !(v >= 0.0)) {
            throw ConfigError("bad fixed network selector '" + selector + "'");
        }
        return {net::LatencySampler::fixed(v), "fixed:" + format_float(v)};
    }

    const auto& base = file.catalog.network(name);
    if (!suffix.empty()) {
        try {
            return {base.with_mode(net::parse_percentile_mode(suffix)), selector};
        } catch (const DomainError& e) {
            throw ConfigError("network selector '" + selector + "': " + e.what());
        }
    }
    if (std::holds_alternative<net::PercentileTable>(base.variant())) {
        return {base, name + ":" + base.describe()};
    }
    return {base, name};
}

}  // namespace

sim::SimConfig resolve(const ScenarioFile& file, const Scenario& s)
{
    const auto& catalog = file.catalog;
    sim::SimConfig c;
    c.initial_gap = s.initial_gap;
    c.initial_speed = s.initial_speed;
    c.deceleration = s.deceleration;
    c.platform = catalog.platform(s.platform);
    c.profile = catalog.profile(s.model, s.platform);
    c.sensing = catalog.sensing();
    c.network = choose_network(file, s, c.platform).sampler;
    c.detection = s.detection;
    c.confirm_frames = s.confirm_frames;
    c.service = s.service;
    c.background_arrival_rate = s.background_arrival_rate;
    c.capture = s.capture;
    c.seed = s.seed;

    if (!(s.concurrent_clients >= 0.0)) throw ConfigError("concurrent_clients must be >= 0");
    if (auto it = file.contention.find(s.platform); it != file.contention.end()) {
        c.inference_scale = it->second.multiplier(s.concurrent_clients);
    } else if (s.concurrent_clients > 0.0) {
        throw ConfigError("concurrent_clients set but platform '" + s.platform + "' has no contention table");
    }

    sim::validate(c);
    return c;
}

std::string rtt_label(const ScenarioFile& file, const Scenario& s)
{
    return choose_network(file, s, file.catalog.platform(s.platform)).label;
}

std::string canonical_text(const ScenarioFile& f)
{
    std::ostringstream os;
    os << serialize_catalog(f.catalog);
    const auto& s = f.scenario;
    os << "\n[scenario]\ngap_m = " << format_float(s.initial_gap) << "\nspeed_mps = " << format_float(s.initial_speed)
       << "\ndecel_mps2 = " << format_float(s.deceleration) << "\nvehicle = " << quote(s.vehicle)
       << "\nmodel = " << quote(s.model) << "\nplatform = " << quote(s.platform) << "\nnetwork = " << quote(s.network)
       << "\n";
    if (s.fixed_rtt) os << "rtt_s = " << format_float(*s.fixed_rtt) << "\n";
    os << "\n[detection]\nrange_m = " << format_float(s.detection.detection_range)
       << "\nvisibility_m = " << format_float(s.detection.visibility_range)
       << "\nprobability = " << format_float(s.detection.per_frame_probability) << "\n";
    os << "\n[sim]\nconfirm_frames = " << s.confirm_frames << "\nservice = " << quote(sim::to_string(s.service))
       << "\nbackground_rate_hz = " << format_float(s.background_arrival_rate)
       << "\ncapture = " << quote(sim::to_string(s.capture))
       << "\nconcurrent_clients = " << format_float(s.concurrent_clients) << "\nseed = " << s.seed << "\n";
    for (const auto& v : f.vehicles) {
        os << "\n[vehicle." << quote(v.name) << "]\ndecel_mps2 = " << format_float(v.deceleration)
           << "\nspeeds_mps = " << join_numbers(v.speed_presets) << "\n";
    }
    for (const auto& [platform, table] : f.contention) {
        os << "\n[contention." << quote(platform) << "]\npoints = [";
        bool first = true;
        for (const auto& [clients, mult] : table.points()) {
            os << (first ? "" : ", ") << "[" << format_float(clients) << ", " << format_float(mult) << "]";
            first = false;
        }
        os << "]\n";
    }
    if (f.sweep) {
        const auto& g = *f.sweep;
        os << "\n[sweep]\ndeployments = [";
        for (std::size_t i = 0; i < g.deployments.size(); ++i) {
            const auto& d = g.deployments[i];
            os << (i ? ", " : "") << "{ model = " << quote(d.model) << ", platform = " << quote(d.platform);
            if (d.detection_range) os << ", range_m = " << format_float(*d.detection_range);
            os << " }";
        }
        os << "]\nvehicles = " << join_strings(g.vehicles) << "\nspeeds_mps = " << join_numbers(g.speeds)
           << "\nnetworks = " << join_strings(g.networks)
           << "\ndetection_ranges_m = " << join_numbers(g.detection_ranges)
           << "\nbackground_rates_hz = " << join_numbers(g.background_rates) << "\nseeds = [";
        for (std::size_t i = 0; i < g.seeds.size(); ++i) os << (i ? ", " : "") << g.seeds[i];
        os << "]\n";
    }
    return os.str();
}

}  // namespace placesim
