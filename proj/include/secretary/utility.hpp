#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secretary/quadrature.hpp"

namespace secretary {

enum class UtilityKind {
    linear,            // w(x) = 1 - x
    power,             // w(x) = -x^p, p > 0
    negated_sqrt,      // w(x) = -sqrt(x)
    step,              // w(x) = 0 for x < q, -1 for x >= q
    piecewise_linear,  // interpolated knot table
    polynomial,        // sum c_i x^i (constants are degree-0 polynomials)
};

/// A nonincreasing payoff over relative rank x in [0, 1].
///
/// Convention: x = 0 is the BEST rank. Every function here is decreasing
/// (or flat) in x, so "smaller argument" always means "better applicant".
/// Getting this backwards silently flips every optimum, so all call sites
/// stick to this one orientation.
///
/// Instances are immutable after construction and safe to share across
/// threads. Construction validates monotonicity on a sampling grid and
/// rejects any increasing segment.
class UtilityFunction {
public:
    static UtilityFunction linear();
    static UtilityFunction constant(double value);
    static UtilityFunction power(double exponent);
    static UtilityFunction negated_sqrt();
    static UtilityFunction step(double threshold);
    static UtilityFunction piecewise_linear(std::vector<std::pair<double, double>> knots);
    static UtilityFunction polynomial(std::vector<double> coefficients);

    /// Parses the textual spec used by the CLI:
    ///   linear | const:<v> | power:<p> | nsqrt | step:<q> | pwl:x0,y0;x1,y1;...
    /// Throws std::invalid_argument naming the offending token.
    static UtilityFunction parse(std::string_view spec);

    /// w(x). Throws std::domain_error when x is outside [0, 1].
    double operator()(double x) const;

    /// Returns w' with w'(x) = w(x) - w(0), so w'(0) = 0 and w' <= 0.
    /// Idempotent: normalizing twice gives the same function pointwise.
    UtilityFunction normalized() const;

    UtilityKind kind() const { return kind_; }
    const std::string& description() const { return description_; }

    /// Interior points where the function is not smooth (step threshold,
    /// piecewise-linear knots); quadratures subdivide at these.
    std::vector<double> interior_breakpoints() const;

    /// Location of the first jump, if any (step utilities only).
    std::optional<double> first_discontinuity() const;

private:
    UtilityFunction() = default;
    double base(double x) const;

    UtilityKind kind_ = UtilityKind::linear;
    double param_ = 0;  // power exponent or step threshold
    std::vector<std::pair<double, double>> knots_;
    std::vector<double> coefficients_;
    double shift_ = 0;  // value subtracted by normalization
    std::string description_;
};

/// Constants feeding the cutoff upper bound: the Lipschitz estimate near
/// zero, the bound M of the normalized function, and the mean utility gap
/// w_hat = integral of (w(0) - w(x)) over [0, 1].
struct UtilityConstants {
    double lipschitz;  // L, measured on [0, epsilon]
    double epsilon;    // the neighborhood actually used
    double bound;      // M: normalized w lies in [-M, 0]
    double w_hat;
};

struct LipschitzRefinement {
    int factor = 2;        // grid multiplier per refinement
    double growth_ratio = 1.5;  // divergence threshold over the ladder
    int refinements = 3;
};

/// Grid estimate of the Lipschitz constant of w on [0, epsilon]: the max of
/// |dw/dx| over adjacent grid pairs, refined `refinements` times. Returns
/// nullopt ("unbounded") when the ladder of estimates keeps growing — the
/// finest estimate exceeds growth_ratio times the coarsest — i.e. the slope
/// blows up as the grid resolves x = 0 (e.g. -sqrt(x)).
std::optional<double> lipschitz_near_zero(const UtilityFunction& w,
                                          double epsilon, int grid = 1024,
                                          const LipschitzRefinement& r = {});

/// w_hat = integral over [0,1] of (w(0) - w(x)), to absolute tolerance tol.
/// Nonnegative; zero exactly when w is constant.
double w_hat(const UtilityFunction& w, double tol = 1e-10);

/// Extracts (L, epsilon, M, w_hat) with L measured on the normalized
/// function. epsilon is clamped below the first discontinuity when the
/// utility has one, since a jump inside the window would make L meaningless;
/// the clamped value is reported back in the result. Returns nullopt when
/// the Lipschitz estimate is unbounded.
std::optional<UtilityConstants> bound_constants(const UtilityFunction& w,
                                                  double epsilon = 0.1,
                                                  double tol = 1e-10);

/// Re-checks the nonincreasing invariant on a grid of the given density;
/// throws std::invalid_argument on violation. Construction already runs
/// this at default density.
void validate_nonincreasing(const UtilityFunction& w, int grid_points = 1025);

}  // namespace secretary
