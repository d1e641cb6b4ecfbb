#include "placesim/sim.hpp"

#include "placesim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

namespace placesim::sim {

std::string to_string(ServiceDistribution d)
{
    return d == ServiceDistribution::deterministic ? "deterministic" : "exponential";
}

std::string to_string(CaptureProcess c) { return c == CaptureProcess::periodic ? "periodic" : "poisson"; }

ServiceDistribution parse_service_distribution(const std::string& s)
{
    if (s == "deterministic") return ServiceDistribution::deterministic;
    if (s == "exponential") return ServiceDistribution::exponential;
    throw ConfigError("unknown service distribution '" + s + "' (expected deterministic or exponential)");
}

CaptureProcess parse_capture_process(const std::string& s)
{
    if (s == "periodic") return CaptureProcess::periodic;
    if (s == "poisson") return CaptureProcess::poisson;
    throw ConfigError("unknown capture process '" + s + "' (expected periodic or poisson)");
}

std::string to_string(EventKind k)
{
    switch (k) {
    case EventKind::FrameCaptured: return "FrameCaptured";
    case EventKind::FrameArrivedAtPlatform: return "FrameArrivedAtPlatform";
    case EventKind::InferenceStarted: return "InferenceStarted";
    case EventKind::InferenceCompleted: return "InferenceCompleted";
    case EventKind::ResultReceived: return "ResultReceived";
    case EventKind::BrakeIssued: return "BrakeIssued";
    case EventKind::VehicleStopped: return "VehicleStopped";
    case EventKind::Collision: return "Collision";
    }
    return "?";
}

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::safe: return "safe";
    case Outcome::collision: return "collision";
    case Outcome::open_road: return "open_road";
    }
    return "?";
}

ContentionTable::ContentionTable(std::vector<std::pair<double, double>> points) : points_(std::move(points))
{
    std::sort(points_.begin(), points_.end());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i].first >= 0.0) || !(points_[i].second > 0.0)) {
            throw ConfigError("contention table needs clients >= 0 and multipliers > 0");
        }
        if (i > 0 && points_[i].first == points_[i - 1].first) {
            throw ConfigError("contention table has duplicate client counts");
        }
    }
}

double ContentionTable::multiplier(double clients) const
{
    if (points_.empty()) return 1.0;
    if (clients <= points_.front().first) return points_.front().second;
    if (clients >= points_.back().first) return points_.back().second;
    auto hi = std::upper_bound(points_.begin(), points_.end(), clients,
                               [](double c, const auto& p) { return c < p.first; });
    auto lo = hi - 1;
    const double w = (clients - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

void validate(const SimConfig& c)
{
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(c.initial_speed)) throw ConfigError("initial speed must be > 0");
    if (!positive(c.deceleration)) throw ConfigError("deceleration must be > 0");
    if (!positive(c.initial_gap)) throw ConfigError("initial obstacle gap must be > 0");
    validate(c.sensing);
    validate(c.profile);
    const auto& d = c.detection;
    if (!(d.detection_range > 0.0)) throw ConfigError("detection range must be > 0");
    if (!(d.detection_range <= d.visibility_range)) {
        throw ConfigError("detection range must not exceed visibility range");
    }
    if (!(d.per_frame_probability > 0.0 && d.per_frame_probability <= 1.0)) {
        throw ConfigError("per-frame detection probability must lie in (0, 1]");
    }
    if (c.braking_enabled && !(c.initial_gap > d.visibility_range)) {
        throw ConfigError("initial gap must exceed the visibility range (obstacle starts out of sight)");
    }
    if (c.confirm_frames < 1) throw ConfigError("confirm_frames must be >= 1");
    if (!(c.background_arrival_rate >= 0.0) || !std::isfinite(c.background_arrival_rate)) {
        throw ConfigError("background arrival rate must be >= 0");
    }
    if (!positive(c.inference_scale)) throw ConfigError("inference scale must be > 0");
    if (c.platform.kind == PlatformKind::cloud && !c.network) {
        throw ConfigError("cloud platform '" + c.platform.platform_id + "' needs a network sampler");
    }
    if (c.profile.platform_id != c.platform.platform_id) {
        throw ConfigError("profile platform '" + c.profile.platform_id + "' does not match platform '" +
                          c.platform.platform_id + "'");
    }
    if (!c.braking_enabled && c.frame_limit == 0) {
        throw ConfigError("runs with braking disabled need a frame limit");
    }
}

namespace {

enum class Action { Collide, Stop, ApplyBrake, ServiceDone, Return, Arrive, Background, Capture };

struct Scheduled {
    double time;
    Action action;
    std::uint64_t seq;
    std::int64_t frame;       // -1 when not frame-related
    std::uint64_t generation;  // collision/stop invalidation

    // Earliest first; at equal times the Action order above applies.
    bool operator>(const Scheduled& o) const
    {
        if (time != o.time) return time > o.time;
        if (action != o.action) return action > o.action;
        return seq > o.seq;
    }
};

struct Job {
    std::int64_t frame;  // -1 for background work
};

enum Stream : std::uint64_t { kRtt = 1, kDetect = 2, kService = 3, kBackground = 4, kCapture = 5 };

class Runner {
public:
    explicit Runner(const SimConfig& c)
        : c_(c),
          rtt_rng_(net::make_stream(c.seed, kRtt)),
          detect_rng_(net::make_stream(c.seed, kDetect)),
          service_rng_(net::make_stream(c.seed, kService)),
          background_rng_(net::make_stream(c.seed, kBackground)),
          capture_rng_(net::make_stream(c.seed, kCapture))
    {
    }

    SimResult run()
    {
        schedule(0.0, Action::Capture, 0);
        if (c_.background_arrival_rate > 0.0) {
            std::exponential_distribution<double> gap(c_.background_arrival_rate);
            schedule(gap(background_rng_), Action::Background);
        }
        if (c_.braking_enabled) schedule(c_.initial_gap / c_.initial_speed, Action::Collide);

        const double horizon = c_.horizon();
        while (!done_ && !agenda_.empty()) {
            const Scheduled ev = agenda_.top();
            agenda_.pop();
            if (c_.braking_enabled && ev.time > horizon) {
                std::ostringstream os;
                os << "simulation passed its horizon of " << horizon << " s without stopping";
                throw HorizonError(os.str());
            }
            now_ = ev.time;
            dispatch(ev);
        }

        finish();
        return std::move(r_);
    }

private:
    void schedule(double t, Action a, std::int64_t frame = -1)
    {
        agenda_.push(Scheduled{t, a, seq_++, frame, generation_});
    }

    double position(double t) const
    {
        if (!brake_applied_ || t <= t_brake_) return c_.initial_speed * t;
        const double s = std::min(t - t_brake_, c_.initial_speed / c_.deceleration);
        return p_brake_ + c_.initial_speed * s - 0.5 * c_.deceleration * s * s;
    }

    void record(EventKind kind, std::optional<std::uint64_t> frame)
    {
        if (!c_.record_events) return;
        const double p = position(now_);
        r_.events.push_back(SimEvent{now_, kind, frame, p, c_.initial_gap - p});
    }

    void dispatch(const Scheduled& ev)
    {
        switch (ev.action) {
        case Action::Capture: on_capture(static_cast<std::uint64_t>(ev.frame)); break;
        case Action::Arrive: enqueue(Job{ev.frame}); break;
        case Action::Background: on_background(); break;
        case Action::ServiceDone: on_service_done(); break;
        case Action::Return: on_return(static_cast<std::uint64_t>(ev.frame)); break;
        case Action::ApplyBrake: on_apply_brake(); break;
        case Action::Stop:
            if (ev.generation != generation_) return;
            r_.outcome = Outcome::safe;
            r_.t_stop = now_;
            record(EventKind::VehicleStopped, std::nullopt);
            done_ = true;
            break;
        case Action::Collide:
            if (ev.generation != generation_) return;
            r_.outcome = Outcome::collision;
            r_.t_collision = now_;
            if (c_.record_events) {
                r_.events.push_back(SimEvent{now_, EventKind::Collision, std::nullopt, c_.initial_gap, 0.0});
            }
            done_ = true;
            break;
        }
    }

    void on_capture(std::uint64_t n)
    {
        if (brake_applied_) return;
        if (c_.frame_limit != 0 && n >= c_.frame_limit) return;

        FrameRecord f;
        f.index = n;
        f.captured = now_;
        const double distance = c_.initial_gap - position(now_);
        bool lucky = true;
        if (c_.detection.per_frame_probability < 1.0) {
            std::bernoulli_distribution draw(c_.detection.per_frame_probability);
            lucky = draw(detect_rng_);
        }
        f.detecting = distance <= c_.detection.detection_range && lucky;
        if (c_.platform.kind == PlatformKind::cloud) f.rtt = c_.network->sample(rtt_rng_);
        r_.frames.push_back(f);
        ++r_.dispatched_frames;
        record(EventKind::FrameCaptured, n);

        schedule(now_ + 0.5 * f.rtt, Action::Arrive, static_cast<std::int64_t>(n));

        double next = 0.0;
        if (c_.capture == CaptureProcess::periodic) {
            next = static_cast<double>(n + 1) / c_.sensing.frame_rate;
        } else {
            std::exponential_distribution<double> gap(c_.sensing.frame_rate);
            next = now_ + gap(capture_rng_);
        }
        schedule(next, Action::Capture, static_cast<std::int64_t>(n + 1));
    }

    void on_background()
    {
        enqueue(Job{-1});
        std::exponential_distribution<double> gap(c_.background_arrival_rate);
        schedule(now_ + gap(background_rng_), Action::Background);
    }

    void enqueue(Job job)
    {
        if (job.frame >= 0) {
            r_.frames[static_cast<std::size_t>(job.frame)].arrived = now_;
            record(EventKind::FrameArrivedAtPlatform, static_cast<std::uint64_t>(job.frame));
        }
        queue_.push_back(job);
        if (queue_.size() == 1) start_service();
    }

    void start_service()
    {
        const Job& job = queue_.front();
        double service = c_.mean_service_time();
        if (c_.service == ServiceDistribution::exponential) {
            std::exponential_distribution<double> d(1.0 / service);
            service = d(service_rng_);
        }
        if (job.frame >= 0) {
            r_.frames[static_cast<std::size_t>(job.frame)].started = now_;
            record(EventKind::InferenceStarted, static_cast<std::uint64_t>(job.frame));
        }
        schedule(now_ + service, Action::ServiceDone, job.frame);
    }

    void on_service_done()
    {
        const Job job = queue_.front();
        queue_.pop_front();
        if (job.frame >= 0) {
            auto& f = r_.frames[static_cast<std::size_t>(job.frame)];
            f.completed = now_;
            record(EventKind::InferenceCompleted, static_cast<std::uint64_t>(job.frame));
            schedule(now_ + 0.5 * f.rtt, Action::Return, job.frame);
        }
        if (!queue_.empty()) start_service();
    }

    void on_return(std::uint64_t n)
    {
        r_.frames[n].received = now_;
        ++results_;
        record(EventKind::ResultReceived, n);

        // Results are consumed strictly in frame order.
        while (next_to_consume_ < r_.frames.size() && r_.frames[next_to_consume_].has_result()) {
            const auto& f = r_.frames[next_to_consume_];
            if (f.detecting) {
                if (streak_ == 0) streak_start_ = f.index;
                ++streak_;
            } else {
                streak_ = 0;
            }
            if (c_.braking_enabled && !brake_issued_ && streak_ >= static_cast<std::uint64_t>(c_.confirm_frames)) {
                issue_brake(f.index);
            }
            ++next_to_consume_;
        }

        if (!c_.braking_enabled && c_.frame_limit != 0 && results_ >= c_.frame_limit) done_ = true;
    }

    void issue_brake(std::uint64_t confirming_frame)
    {
        brake_issued_ = true;
        r_.trigger_frame = streak_start_;
        r_.t_det = r_.frames[streak_start_].captured;
        r_.d_capture = c_.initial_gap - c_.initial_speed * *r_.t_det;
        r_.t_brake_issued = now_;
        record(EventKind::BrakeIssued, confirming_frame);
        schedule(now_ + c_.sensing.control_delay, Action::ApplyBrake);
    }

    void on_apply_brake()
    {
        brake_applied_ = true;
        t_brake_ = now_;
        p_brake_ = c_.initial_speed * now_;
        r_.t_brake = now_;

        const double remaining = c_.initial_gap - p_brake_;
        const double v0 = c_.initial_speed;
        const double a = c_.deceleration;
        const double stop_distance = v0 * v0 / (2.0 * a);
        r_.d_brake = remaining;
        r_.d_stop = remaining - stop_distance;

        ++generation_;  // cancels the constant-speed collision
        if (stop_distance < remaining) {
            schedule(now_ + v0 / a, Action::Stop);
        } else {
            const double s = (v0 - std::sqrt(std::max(0.0, v0 * v0 - 2.0 * a * remaining))) / a;
            schedule(now_ + s, Action::Collide);
        }
    }

    void finish()
    {
        if (c_.braking_enabled || c_.initial_gap > c_.detection.visibility_range) {
            r_.t_obs = (c_.initial_gap - c_.detection.visibility_range) / c_.initial_speed;
        }
        if (r_.t_det && r_.t_obs) r_.detection_delay = *r_.t_det - *r_.t_obs;
        if (r_.d_stop) r_.margin = *r_.d_stop;
        r_.total_inference_energy = static_cast<double>(r_.dispatched_frames) * c_.profile.energy_per_inference;
        if (!c_.braking_enabled) r_.outcome = Outcome::open_road;
    }

    const SimConfig& c_;
    net::Rng rtt_rng_;
    net::Rng detect_rng_;
    net::Rng service_rng_;
    net::Rng background_rng_;
    net::Rng capture_rng_;

    std::priority_queue<Scheduled, std::vector<Scheduled>, std::greater<>> agenda_;
    std::uint64_t seq_ = 0;
    std::uint64_t generation_ = 0;
    double now_ = 0.0;
    bool done_ = false;

    std::deque<Job> queue_;
    std::uint64_t results_ = 0;
    std::size_t next_to_consume_ = 0;
    std::uint64_t streak_ = 0;
    std::uint64_t streak_start_ = 0;

    bool brake_issued_ = false;
    bool brake_applied_ = false;
    double t_brake_ = 0.0;
    double p_brake_ = 0.0;

    SimResult r_;
};

}  // namespace

SimResult run(const SimConfig& config)
{
    validate(config);
    return Runner(config).run();
}

}  // namespace placesim::sim
