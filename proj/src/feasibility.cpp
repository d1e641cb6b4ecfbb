#include "placesim/feasibility.hpp"

#include "placesim/errors.hpp"
#include "placesim/latency.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

namespace placesim {

std::string to_string(RejectReason r)
{
    switch (r) {
    case RejectReason::deadline: return "deadline";
    case RejectReason::energy: return "energy";
    case RejectReason::unstable: return "unstable";
    }
    return "deadline";
}

std::vector<PairKey> FeasibilityReport::feasible_pairs() const
{
    std::vector<PairKey> out;
    for (const auto& e : evaluated) {
        if (e.feasible) out.push_back({e.model_id, e.platform_id});
    }
    return out;
}

const PairEvaluation* FeasibilityReport::find(const std::string& model, const std::string& platform) const
{
    for (const auto& e : evaluated) {
        if (e.model_id == model && e.platform_id == platform) return &e;
    }
    return nullptr;
}

NetworkPoint representative_network_point(const Catalog& catalog, double q)
{
    NetworkPoint point;
    for (const auto& p : catalog.platforms()) {
        if (const auto* sampler = catalog.network_for(p)) point[p.platform_id] = sampler->percentile(q);
    }
    return point;
}

FeasibilityReport feasibility_set(const Catalog& catalog, const NetworkPoint& network, FeasibilityOptions options)
{
    for (const auto& [id, rtt] : network) {
        const auto& p = catalog.platform(id);  // throws on unknown ids
        if (!(rtt >= 0.0)) throw ConfigError("negative network delay for platform '" + id + "'");
        if (p.kind == PlatformKind::device && rtt != 0.0) {
            throw ConfigError("device platform '" + id + "' cannot carry a network delay");
        }
    }

    const auto& sensing = catalog.sensing();
    FeasibilityReport report;
    report.deadline = sensing.deadline;
    report.amortized = options.amortized;
    report.evaluated.reserve(catalog.profiles().size());

    for (const auto& prof : catalog.profiles()) {
        const auto& platform = catalog.platform(prof.platform_id);
        PairEvaluation e;
        e.model_id = prof.model_id;
        e.platform_id = prof.platform_id;
        e.kind = platform.kind;
        e.energy = prof.energy_per_inference;
        e.accuracy = prof.accuracy;

        if (platform.kind == PlatformKind::cloud) {
            auto it = network.find(platform.platform_id);
            if (it == network.end()) {
                throw ConfigError("no network delay supplied for cloud platform '" + platform.platform_id + "'");
            }
            e.network_delay = it->second;
        }

        e.inference_latency = prof.inference_latency;
        if (options.amortized) {
            const latency::QueueModel q{prof.inference_latency, sensing.frame_rate};
            if (!q.stable()) {
                e.inference_latency = std::numeric_limits<double>::infinity();
                e.total_latency = std::numeric_limits<double>::infinity();
                e.reject_reason = RejectReason::unstable;
                report.evaluated.push_back(std::move(e));
                continue;
            }
            e.inference_latency = latency::amortized_latency(q);
        }

        e.total_latency = latency::total_response_latency(e.network_delay, e.inference_latency, sensing.control_delay);
        if (!(e.total_latency <= sensing.deadline)) {
            e.reject_reason = RejectReason::deadline;
        } else if (platform.energy_budget && !(e.energy <= *platform.energy_budget)) {
            e.reject_reason = RejectReason::energy;
        } else {
            e.feasible = true;
        }
        report.evaluated.push_back(std::move(e));
    }
    return report;
}

FeasibilityReport select_optimal(FeasibilityReport report)
{
    const PairEvaluation* best = nullptr;
    auto rank = [](const PairEvaluation& e) {
        return std::tie(e.total_latency, e.energy, e.model_id, e.platform_id);
    };
    for (const auto& e : report.evaluated) {
        if (!e.feasible) continue;
        if (!best || e.accuracy > best->accuracy || (e.accuracy == best->accuracy && rank(e) < rank(*best))) {
            best = &e;
        }
    }
    report.selected.reset();
    if (best) report.selected = PairKey{best->model_id, best->platform_id};
    return report;
}

FeasibilityReport restrict(const FeasibilityReport& report, const std::function<bool(const PairEvaluation&)>& keep)
{
    FeasibilityReport out;
    out.deadline = report.deadline;
    out.amortized = report.amortized;
    std::copy_if(report.evaluated.begin(), report.evaluated.end(), std::back_inserter(out.evaluated), keep);
    return out;
}

FeasibilityReport restrict_to_kind(const FeasibilityReport& report, PlatformKind kind)
{
    return restrict(report, [kind](const PairEvaluation& e) { return e.kind == kind; });
}

}  // namespace placesim
