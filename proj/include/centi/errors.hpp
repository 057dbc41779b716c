#pragma once

#include <stdexcept>
#include <string>

namespace centi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed config document or violated model invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Raised by the integrator when the state leaves the documented bounds.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Telemetry that cannot be read or does not satisfy the log invariants.
class TelemetryError : public Error {
public:
    using Error::Error;
};

/// Input to a metric that makes the metric undefined.
class MetricsError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace centi
