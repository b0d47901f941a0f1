#pragma once

#include <stdexcept>
#include <string>

namespace secretary {

/// A numerical routine failed to reach its requested accuracy. Carries the
/// best estimate obtained so far and the estimated error bound on it.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

/// Request exceeds a hard implementation limit (e.g. factorial enumeration
/// size); the message names the alternative route.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace secretary
