#pragma once

// Round-trip network delay sources.
//
// A sampler is an immutable description of a delay distribution. Draws take a
// caller-owned generator so concurrent runs never share random state.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace placesim::net {

using Rng = std::mt19937_64;

struct FixedDelay {
    double value = 0.0;
};

enum class PercentileMode { p10, p50, p90 };

struct PercentileTable {
    double p10 = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    PercentileMode mode = PercentileMode::p50;
};

struct EmpiricalDelay {
    std::vector<double> samples;  // file order, not sorted
};

/// location + exp(Normal(log_mean, log_sigma)), all in seconds.
struct ShiftedLognormal {
    double location = 0.0;
    double log_mean = 0.0;
    double log_sigma = 0.0;
};

class LatencySampler {
public:
    using Variant = std::variant<FixedDelay, PercentileTable, EmpiricalDelay, ShiftedLognormal>;

    /// Throws DomainError when the variant's invariants do not hold.
    explicit LatencySampler(Variant v);

    static LatencySampler fixed(double seconds);
    static LatencySampler percentile_table(double p10, double p50, double p90,
                                           PercentileMode mode = PercentileMode::p50);
    static LatencySampler empirical(std::vector<double> samples);
    static LatencySampler shifted_lognormal(double location, double log_mean, double log_sigma);

    const Variant& variant() const noexcept { return v_; }

    /// One round-trip draw. Percentile tables and fixed delays consume no randomness.
    double sample(Rng& rng) const;

    /// Quantile of the distribution for q in [0, 1]. Empirical samplers use nearest rank
    /// (ceil(q * n)-th smallest sample); percentile tables interpolate linearly between
    /// the 0.1/0.5/0.9 anchors and clamp outside them.
    double percentile(double q) const;

    /// Same sampler with the lookup mode switched. Only meaningful for percentile tables;
    /// throws DomainError for other variants.
    LatencySampler with_mode(PercentileMode mode) const;

    /// Short label used in summaries: "fixed", "p50", "empirical", "lognormal".
    std::string describe() const;

    friend bool operator==(const LatencySampler&, const LatencySampler&);

private:
    Variant v_;
    std::vector<double> sorted_;  // cached sorted copy for empirical quantiles
};

bool operator==(const FixedDelay&, const FixedDelay&);
bool operator==(const PercentileTable&, const PercentileTable&);
bool operator==(const EmpiricalDelay&, const EmpiricalDelay&);
bool operator==(const ShiftedLognormal&, const ShiftedLognormal&);

/// Reads one non-negative seconds value per line. Blank lines and '#' comments are skipped.
/// Throws ConfigError naming the line on parse failure or negative values, and when the
/// file holds no samples at all.
LatencySampler load_samples(const std::filesystem::path& path);

/// Parses text in the sample-file format; `origin` is used in error messages.
LatencySampler parse_samples(const std::string& text, const std::string& origin = "<input>");

PercentileMode parse_percentile_mode(const std::string& s);
std::string to_string(PercentileMode m);

/// Generator seeded from (seed, stream). Distinct streams are independent, so changing
/// how often one consumer draws never perturbs another.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

}  // namespace placesim::net
