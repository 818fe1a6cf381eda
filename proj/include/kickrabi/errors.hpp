// errors.hpp — Exception types shared across the toolkit

#pragma once

#include <stdexcept>
#include <string>

namespace kickrabi {

// Requested physics outside the regime an operation supports (e.g. a
// free-evolution kick off resonance).
class UnsupportedRegime : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Population reached the top of the Fock truncation; n_max is too small.
class TruncationLeakage : public std::runtime_error {
public:
    TruncationLeakage(const std::string& what, double time, double population)
        : std::runtime_error(what), time_(time), population_(population) {}

    double time() const noexcept { return time_; }
    double population() const noexcept { return population_; }

private:
    double time_;
    double population_;
};

// A numeric self-check (unitarity drift, etc.) failed.
class NumericGuard : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kickrabi
