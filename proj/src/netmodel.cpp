#include "placesim/netmodel.hpp"

#include "placesim/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

namespace placesim::net {

namespace {

void require_non_negative(double v, const char* what)
{
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be a finite non-negative delay");
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

LatencySampler::LatencySampler(Variant v) : v_(std::move(v))
{
    std::visit(overloaded{
                   [](const FixedDelay& f) { require_non_negative(f.value, "fixed delay"); },
                   [](const PercentileTable& t) {
                       require_non_negative(t.p10, "p10");
                       require_non_negative(t.p50, "p50");
                       require_non_negative(t.p90, "p90");
                       if (!(t.p10 <= t.p50 && t.p50 <= t.p90)) {
                           throw DomainError("percentile table requires p10 <= p50 <= p90");
                       }
                   },
                   [this](const EmpiricalDelay& e) {
                       if (e.samples.empty()) throw DomainError("empirical sampler needs at least one sample");
                       for (double s : e.samples) require_non_negative(s, "empirical sample");
                       sorted_ = e.samples;
                       std::sort(sorted_.begin(), sorted_.end());
                   },
                   [](const ShiftedLognormal& l) {
                       require_non_negative(l.location, "lognormal location");
                       if (!std::isfinite(l.log_mean)) throw DomainError("lognormal log_mean must be finite");
                       if (!(l.log_sigma >= 0.0) || !std::isfinite(l.log_sigma)) {
                           throw DomainError("lognormal log_sigma must be finite and >= 0");
                       }
                   },
               },
               v_);
}

LatencySampler LatencySampler::fixed(double seconds) { return LatencySampler(FixedDelay{seconds}); }

LatencySampler LatencySampler::percentile_table(double p10, double p50, double p90, PercentileMode mode)
{
    return LatencySampler(PercentileTable{p10, p50, p90, mode});
}

LatencySampler LatencySampler::empirical(std::vector<double> samples)
{
    return LatencySampler(EmpiricalDelay{std::move(samples)});
}

LatencySampler LatencySampler::shifted_lognormal(double location, double log_mean, double log_sigma)
{
    return LatencySampler(ShiftedLognormal{location, log_mean, log_sigma});
}

double LatencySampler::sample(Rng& rng) const
{
    return std::visit(overloaded{
                          [](const FixedDelay& f) { return f.value; },
                          [](const PercentileTable& t) {
                              switch (t.mode) {
                              case PercentileMode::p10: return t.p10;
                              case PercentileMode::p90: return t.p90;
                              case PercentileMode::p50: break;
                              }
                              return t.p50;
                          },
                          [&rng](const EmpiricalDelay& e) {
                              std::uniform_int_distribution<std::size_t> pick(0, e.samples.size() - 1);
                              return e.samples[pick(rng)];
                          },
                          [&rng](const ShiftedLognormal& l) {
                              if (l.log_sigma == 0.0) return l.location + std::exp(l.log_mean);
                              std::lognormal_distribution<double> d(l.log_mean, l.log_sigma);
                              return l.location + d(rng);
                          },
                      },
                      v_);
}

double LatencySampler::percentile(double q) const
{
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("percentile q must lie in [0, 1]");

    return std::visit(overloaded{
                          [](const FixedDelay& f) { return f.value; },
                          [q](const PercentileTable& t) {
                              if (q <= 0.1) return t.p10;
                              if (q >= 0.9) return t.p90;
                              if (q <= 0.5) return t.p10 + (q - 0.1) / 0.4 * (t.p50 - t.p10);
                              return t.p50 + (q - 0.5) / 0.4 * (t.p90 - t.p50);
                          },
                          [this, q](const EmpiricalDelay&) {
                              const auto n = sorted_.size();
                              auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
                              rank = std::clamp<std::size_t>(rank, 1, n);
                              return sorted_[rank - 1];
                          },
                          [q](const ShiftedLognormal& l) {
                              if (q == 0.0) return l.location;
                              if (q == 1.0) return std::numeric_limits<double>::infinity();
                              if (l.log_sigma == 0.0) return l.location + std::exp(l.log_mean);
                              const boost::math::normal_distribution<double> n(l.log_mean, l.log_sigma);
                              return l.location + std::exp(boost::math::quantile(n, q));
                          },
                      },
                      v_);
}

LatencySampler LatencySampler::with_mode(PercentileMode mode) const
{
    const auto* t = std::get_if<PercentileTable>(&v_);
    if (!t) throw DomainError("percentile mode applies only to percentile-table samplers");
    auto copy = *t;
    copy.mode = mode;
    return LatencySampler(copy);
}

std::string LatencySampler::describe() const
{
    return std::visit(overloaded{
                          [](const FixedDelay&) { return std::string("fixed"); },
                          [](const PercentileTable& t) { return to_string(t.mode); },
                          [](const EmpiricalDelay&) { return std::string("empirical"); },
                          [](const ShiftedLognormal&) { return std::string("lognormal"); },
                      },
                      v_);
}

bool operator==(const FixedDelay& a, const FixedDelay& b) { return a.value == b.value; }
bool operator==(const PercentileTable& a, const PercentileTable& b)
{
    return a.p10 == b.p10 && a.p50 == b.p50 && a.p90 == b.p90 && a.mode == b.mode;
}
bool operator==(const EmpiricalDelay& a, const EmpiricalDelay& b) { return a.samples == b.samples; }
bool operator==(const ShiftedLognormal& a, const ShiftedLognormal& b)
{
    return a.location == b.location && a.log_mean == b.log_mean && a.log_sigma == b.log_sigma;
}
bool operator==(const LatencySampler& a, const LatencySampler& b) { return a.v_ == b.v_; }

LatencySampler parse_samples(const std::string& text, const std::string& origin)
{
    std::vector<double> values;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;

        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
        if (ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(v)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": cannot parse '" + std::string(body) +
                              "' as seconds");
        }
        if (v < 0.0) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": negative delay " + std::string(body));
        }
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError(origin + ": no delay samples found");
    return LatencySampler::empirical(std::move(values));
}

LatencySampler load_samples(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sample file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_samples(buf.str(), path.string());
}

PercentileMode parse_percentile_mode(const std::string& s)
{
    if (s == "p10") return PercentileMode::p10;
    if (s == "p50") return PercentileMode::p50;
    if (s == "p90") return PercentileMode::p90;
    throw ConfigError("unknown percentile mode '" + s + "' (expected p10, p50 or p90)");
}

std::string to_string(PercentileMode m)
{
    switch (m) {
    case PercentileMode::p10: return "p10";
    case PercentileMode::p50: return "p50";
    case PercentileMode::p90: return "p90";
    }
    return "p50";
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
    return Rng(seq);
}

}  // namespace placesim::net
