#pragma once

// Reference computations written without the library, used to pin expected values.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

// Distance covered while v(t) = v0 - a t falls to zero, by composite Simpson.
inline double integrated_braking_distance(double v0, double a, int steps = 20000)
{
    const double t_end = v0 / a;
    const double h = t_end / steps;
    double sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double v = v0 - a * (i * h);
        const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * v;
    }
    return sum * h / 3.0;
}

// Two-phase trajectory: constant speed during the delay, then braking.
inline double integrated_stopping_distance(double v0, double a, double delay, int steps = 20000)
{
    const double h = delay / steps;
    double cruise = 0.0;
    for (int i = 0; i < steps; ++i) cruise += v0 * h;
    return cruise + integrated_braking_distance(v0, a, steps);
}

// Delay d with stopping distance exactly s_avail, by bisection on [0, s_avail / v0].
inline double bisected_reaction_budget(double v0, double a, double s_avail)
{
    auto excess = [&](double d) { return v0 * d + v0 * v0 / (2.0 * a) - s_avail; };
    double lo = 0.0;
    double hi = s_avail / v0;
    if (excess(lo) > 0.0) return -1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Nearest rank: the ceil(q n)-th smallest sample (1-based, minimum rank 1).
inline double nearest_rank(std::vector<double> samples, double q)
{
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    auto rank = static_cast<std::size_t>(std::ceil(q * n));
    rank = std::clamp<std::size_t>(rank, 1, samples.size());
    return samples[rank - 1];
}

// Deterministic single-detection braking run with no queueing: frames every 1/F,
// the first frame at or inside `range` triggers, the brake lands `response` later.
struct ClosedFormTrace {
    std::uint64_t frame = 0;
    double t_det = 0.0;
    double d_capture = 0.0;
    double t_brake = 0.0;
    double d_brake = 0.0;
    double d_stop = 0.0;
};

inline ClosedFormTrace closed_form_trace(double gap, double v0, double a, double frame_rate, double range,
                                         double response)
{
    ClosedFormTrace t;
    while (gap - v0 * (static_cast<double>(t.frame) / frame_rate) > range) ++t.frame;
    t.t_det = static_cast<double>(t.frame) / frame_rate;
    t.d_capture = gap - v0 * t.t_det;
    t.t_brake = t.t_det + response;
    t.d_brake = t.d_capture - v0 * response;
    t.d_stop = t.d_brake - v0 * v0 / (2.0 * a);
    return t;
}

}  // namespace oracle
