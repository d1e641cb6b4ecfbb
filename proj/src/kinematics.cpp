#include "placesim/kinematics.hpp"

#include "placesim/errors.hpp"

#include <cmath>

namespace placesim::kinematics {

namespace {

void require_delays(double a, double b, double c = 0.0)
{
    if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0)) throw DomainError("delays must be non-negative");
}

}  // namespace

void validate(const BrakingScenario& s)
{
    if (!(s.initial_speed > 0.0) || !std::isfinite(s.initial_speed)) throw DomainError("initial speed must be > 0");
    if (!(s.deceleration > 0.0) || !std::isfinite(s.deceleration)) throw DomainError("deceleration must be > 0");
    if (!(s.available_distance > 0.0) || !std::isfinite(s.available_distance)) {
        throw DomainError("available distance must be > 0");
    }
}

BrakingScenario make_scenario(double initial_speed, double deceleration, double available_distance)
{
    BrakingScenario s{initial_speed, deceleration, available_distance};
    validate(s);
    return s;
}

std::vector<VehicleClass> default_vehicle_classes()
{
    const std::vector<double> speeds{mph_to_mps(20), mph_to_mps(40), mph_to_mps(60)};
    return {
        {"car", 6.0, speeds},
        {"truck", 4.0, speeds},
        {"motorbike", 7.0, speeds},
    };
}

double braking_distance(double initial_speed, double deceleration)
{
    if (!(deceleration > 0.0)) throw DomainError("deceleration must be > 0");
    if (!(initial_speed >= 0.0)) throw DomainError("initial speed must be >= 0");
    return initial_speed * initial_speed / (2.0 * deceleration);
}

double stopping_distance(double initial_speed, double deceleration, double perception_delay)
{
    if (!(perception_delay >= 0.0)) throw DomainError("perception delay must be >= 0");
    return initial_speed * perception_delay + braking_distance(initial_speed, deceleration);
}

double reaction_budget(const BrakingScenario& s)
{
    validate(s);
    return s.available_distance / s.initial_speed - s.initial_speed / (2.0 * s.deceleration);
}

bool is_safe_static(double network_delay, double inference_delay, const BrakingScenario& s)
{
    require_delays(network_delay, inference_delay);
    return network_delay + inference_delay < reaction_budget(s);
}

bool is_safe_with_detection(double detection_delay, double network_delay, double inference_delay,
                            const BrakingScenario& s)
{
    require_delays(detection_delay, network_delay, inference_delay);
    return detection_delay + network_delay + inference_delay < reaction_budget(s);
}

}  // namespace placesim::kinematics
