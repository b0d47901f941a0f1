#pragma once

#include <functional>
#include <vector>

#include "secretary/errors.hpp"

namespace secretary {

/// How the cutoff-expectation sum-of-integrals is evaluated.
/// swapped_kernel folds the whole t-sum into one integrand (one adaptive
/// quadrature per query); per_term evaluates one integral per t and is kept
/// as an independent cross-check route.
enum class InnerSumStrategy { per_term, swapped_kernel };

struct QuadratureConfig {
    double abs_tol = 1e-10;
    int max_depth = 40;
    InnerSumStrategy inner_sum_strategy = InnerSumStrategy::swapped_kernel;
};

/// Adaptive Simpson quadrature of f over [a, b] with an interval-doubling
/// error estimate: each interval is compared against its two halves and
/// split until the Richardson-extrapolated error fits the local budget.
/// Deterministic for a fixed config. Throws NumericError (carrying the best
/// estimate and an error bound) when max_depth is exhausted before the
/// budget is met; std::domain_error on invalid arguments.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& q = {});

/// Same, but with mandatory subdivision points (e.g. discontinuity or kink
/// locations of the integrand). Points outside (a, b) are ignored.
double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  double a, double b,
                                  const std::vector<double>& breakpoints,
                                  const QuadratureConfig& q = {});

}  // namespace secretary
