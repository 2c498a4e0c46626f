#pragma once

#include <stdexcept>
#include <string>

namespace sshqed {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class OutOfBandError : public Error {
public:
    enum class Kind { gap, beyond_edge, wrong_band };
    OutOfBandError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// sin k = 0 at a band edge; every transmittance denominator degenerates there.
class EdgeSingularityError : public Error {
public:
    using Error::Error;
};

// Denominator of the effective potential vanishes. Carries the detuning at
// which it happened so sweeps can substitute the analytic limit.
class PotentialSingularity : public Error {
public:
    PotentialSingularity(double delta_k, const std::string& what)
        : Error(what), delta_k_(delta_k) {}
    double delta_k() const noexcept { return delta_k_; }

private:
    double delta_k_;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

class UndefinedWindingError : public Error {
public:
    using Error::Error;
};

class PlacementError : public Error {
public:
    using Error::Error;
};

class SingularSystemError : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    using Error::Error;
};

class ChainTooShortError : public Error {
public:
    using Error::Error;
};

class EmptyGridError : public Error {
public:
    using Error::Error;
};

}  // namespace sshqed
