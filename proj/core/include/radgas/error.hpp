#pragma once

#include <stdexcept>
#include <string>

namespace radgas {

// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegratorFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PrecisionLoss : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CflViolation : public NumericalError {
public:
    CflViolation(const std::string& what, double dt, double dt_max)
        : NumericalError(what), dt_(dt), dt_max_(dt_max) {}
    double dt() const noexcept { return dt_; }
    double dt_max() const noexcept { return dt_max_; }

private:
    double dt_;
    double dt_max_;
};

// A step failure carrying the simulation time at which it happened.
class StepFailure : public NumericalError {
public:
    StepFailure(const std::string& what, double t) : NumericalError(what), t_(t) {}
    double t() const noexcept { return t_; }

private:
    double t_;
};

class DomainTooShort : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace radgas
