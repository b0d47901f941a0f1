#pragma once

#include <string>
#include <utility>
#include <vector>

#include "secretary/utility.hpp"

namespace secretary::testing {

/// The utility shapes every suite exercises: the linear payoff, a convex and
/// a concave power-law-ish shape, a jump, two kinked tables and a constant.
inline std::vector<UtilityFunction> corpus() {
    return {
        UtilityFunction::linear(),
        UtilityFunction::power(2),
        UtilityFunction::negated_sqrt(),
        UtilityFunction::step(0.3),
        UtilityFunction::piecewise_linear({{0, 0}, {0.5, -0.2}, {1, -1}}),
        UtilityFunction::piecewise_linear({{0, 1}, {0.2, 0.2}, {1, 0}}),
        UtilityFunction::constant(-1),
    };
}

/// Members with a finite Lipschitz estimate near zero.
inline std::vector<UtilityFunction> lipschitz_corpus() {
    return {
        UtilityFunction::linear(),
        UtilityFunction::power(2),
        UtilityFunction::step(0.3),
        UtilityFunction::piecewise_linear({{0, 0}, {0.5, -0.2}, {1, -1}}),
        UtilityFunction::piecewise_linear({{0, 1}, {0.2, 0.2}, {1, 0}}),
    };
}

/// Members whose slope at zero is nonzero and finite; for these the optimal
/// cutoff genuinely grows like sqrt(n) (flat-at-zero shapes grow slower).
inline std::vector<UtilityFunction> sqrt_scaling_corpus() {
    return {
        UtilityFunction::linear(),
        UtilityFunction::piecewise_linear({{0, 0}, {0.5, -0.2}, {1, -1}}),
        UtilityFunction::piecewise_linear({{0, 1}, {0.2, 0.2}, {1, 0}}),
    };
}

}  // namespace secretary::testing
