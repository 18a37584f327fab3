#pragma once

#include <stdexcept>
#include <string>

namespace gossipmf {

/// Base class for all errors raised by the engine.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- model_core -------------------------------------------------------------

struct NegativeEntry : Error {
    using Error::Error;
};

struct SumNotOne : Error {
    explicit SumNotOne(double deviation)
        : Error("occupancy entries sum to 1 " + ((deviation >= 0) ? std::string("+ ") : std::string("- ")) +
                std::to_string(std::abs(deviation))),
          deviation(deviation) {}
    double deviation;
};

// -- autodiff2 ----------------------------------------------------------------

struct NonFiniteDerivative : Error {
    using Error::Error;
};

// -- gossip_kernels -----------------------------------------------------------

struct InvalidParams : Error {
    using Error::Error;
};

struct MeasureUnavailable : Error {
    using Error::Error;
};

// -- exact_oracle -------------------------------------------------------------

struct StateSpaceTooLarge : Error {
    using Error::Error;
};

// -- experiment_cli -----------------------------------------------------------

struct ConfigError : Error {
    using Error::Error;
};

struct UnknownKey : ConfigError {
    using ConfigError::ConfigError;
};

struct TypeMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct InvariantViolation : ConfigError {
    using ConfigError::ConfigError;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace gossipmf
