#pragma once

#include <stdexcept>
#include <string>

namespace placesim {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric argument outside the operation's domain (negative delay, q > 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration: parse failures, invariant violations,
/// dangling references between catalog entries.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A queue evaluated at or beyond saturation (arrival_rate * service_time >= 1).
class UnstableQueueError : public Error {
public:
    UnstableQueueError(double service_time, double arrival_rate);

    double utilization() const noexcept { return utilization_; }

private:
    double utilization_;
};

/// Simulation ran past its time horizon without stopping or colliding.
class HorizonError : public Error {
public:
    using Error::Error;
};

}  // namespace placesim
