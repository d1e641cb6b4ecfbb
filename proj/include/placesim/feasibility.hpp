#pragma once

// Deployment-time admission of (model, platform) pairs and accuracy-optimal
// selection among the admitted ones.

#include "placesim/catalog.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace placesim {

enum class RejectReason { deadline, energy, unstable };
std::string to_string(RejectReason r);

struct PairEvaluation {
    std::string model_id;
    std::string platform_id;
    PlatformKind kind = PlatformKind::device;
    double network_delay = 0.0;
    double inference_latency = 0.0;  // raw or queue-amortized, see FeasibilityOptions
    double total_latency = 0.0;      // +inf when the queue is unstable
    double energy = 0.0;
    double accuracy = 0.0;
    bool feasible = false;
    std::optional<RejectReason> reject_reason;
};

struct PairKey {
    std::string model_id;
    std::string platform_id;

    friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct FeasibilityReport {
    std::vector<PairEvaluation> evaluated;  // catalog profile order
    std::optional<PairKey> selected;
    double deadline = 0.0;
    bool amortized = false;

    std::vector<PairKey> feasible_pairs() const;
    const PairEvaluation* find(const std::string& model, const std::string& platform) const;
};

/// Representative round trip per cloud platform id.
using NetworkPoint = std::map<std::string, double>;

struct FeasibilityOptions {
    /// Replace raw inference latency with its M/M/1 amortized value at the frame rate;
    /// saturated pairs are rejected as unstable.
    bool amortized = false;
};

/// Quantile `q` of each cloud platform's sampler.
NetworkPoint representative_network_point(const Catalog& catalog, double q = 0.5);

/// Evaluates every catalog pair. A pair is feasible iff its total latency
/// (network + inference + control) is <= the deadline and, when the platform declares
/// an energy budget, its energy is <= that budget. The first violated constraint is
/// recorded, deadline before energy. Throws ConfigError when `network` names an unknown
/// platform, gives a device a non-zero delay, or omits a cloud platform that has profiles.
FeasibilityReport feasibility_set(const Catalog& catalog, const NetworkPoint& network,
                                  FeasibilityOptions options = {});

/// Fills `selected` with the feasible pair of highest accuracy. Ties: lower total latency,
/// then lower energy, then model id, then platform id.
FeasibilityReport select_optimal(FeasibilityReport report);

/// Copy keeping only entries matching `keep`; selection cleared.
FeasibilityReport restrict(const FeasibilityReport& report, const std::function<bool(const PairEvaluation&)>& keep);
FeasibilityReport restrict_to_kind(const FeasibilityReport& report, PlatformKind kind);

}  // namespace placesim
