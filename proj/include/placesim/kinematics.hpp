#pragma once

// Constant-deceleration braking physics and the reaction-time safety predicates.

#include <string>
#include <vector>

namespace placesim::kinematics {

inline constexpr double kMetersPerSecondPerMph = 0.44704;

constexpr double mph_to_mps(double mph) { return mph * kMetersPerSecondPerMph; }

/// Vehicle speed, braking capability and the gap to the obstacle at the reference
/// instant. All strictly positive; construct through make_scenario() to enforce that.
struct BrakingScenario {
    double initial_speed = 0.0;       // m/s
    double deceleration = 0.0;        // m/s^2
    double available_distance = 0.0;  // m
};

BrakingScenario make_scenario(double initial_speed, double deceleration, double available_distance);
void validate(const BrakingScenario& s);

struct VehicleClass {
    std::string name;
    double deceleration = 0.0;  // m/s^2
    std::vector<double> speed_presets;  // m/s
};

/// Illustrative car / truck / motorbike classes (6.0 / 4.0 / 7.0 m/s^2) at 20, 40 and
/// 60 mph. The decelerations are placeholders, not measured values.
std::vector<VehicleClass> default_vehicle_classes();

/// v0^2 / (2a). DomainError for a <= 0 or v0 < 0.
double braking_distance(double initial_speed, double deceleration);

/// Distance covered while perception runs at full speed, plus the braking distance.
double stopping_distance(double initial_speed, double deceleration, double perception_delay);

/// s_avail / v0 - v0 / (2a): the largest perception delay that still stops short of the
/// obstacle. Negative when even an instant reaction collides.
double reaction_budget(const BrakingScenario& s);

/// network + inference < reaction budget (strict; grazing contact is unsafe).
bool is_safe_static(double network_delay, double inference_delay, const BrakingScenario& s);

/// detection + network + inference < reaction budget, with the scenario's available
/// distance measured when the obstacle first becomes visible.
bool is_safe_with_detection(double detection_delay, double network_delay, double inference_delay,
                            const BrakingScenario& s);

}  // namespace placesim::kinematics
