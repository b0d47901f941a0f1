#pragma once

#include <utility>
#include <vector>

#include "secretary/quadrature.hpp"
#include "secretary/utility.hpp"

namespace secretary {

/// Exact evaluation of one cutoff policy: skip applicants 1..c-1, then
/// accept the first best-so-far; applicant n is accepted by force.
struct PolicyEval {
    int n = 0;
    int c = 0;
    double expected_utility = 0;
    /// (t, P_c(t)) for t in {c, ..., n}; sums to 1 by telescoping.
    /// For c = 1 this is the single pair (1, 1).
    std::vector<std::pair<int, double>> accept_probs;
};

/// P_c(t): probability the cutoff-c policy accepts applicant t.
/// (c-1)/(t(t-1)) for t < n, (c-1)/(n-1) for the forced last slot.
/// Requires 2 <= c <= t <= n; the c = 1 policy accepts applicant 1 with
/// probability one and is handled by expected_utility directly.
double accept_probability(int n, int c, int t);

/// Expected utility of the best among t i.i.d. uniform types:
/// t * integral of w(x) (1-x)^(t-1) over [0, 1].
double best_of_t_expectation(const UtilityFunction& w, int t,
                             const QuadratureConfig& q = {});

/// E_c: the policy's expected utility, plus the acceptance distribution.
/// c = 1 means "accept applicant 1 unconditionally", whose value is the
/// plain mean utility (the natural limit of skipping c-1 applicants).
PolicyEval expected_utility(const UtilityFunction& w, int n, int c,
                            const QuadratureConfig& q = {});

/// First difference E_c - E_{c-1}, via the closed-form single-integral
/// expression for c >= 3 and direct subtraction for c = 2. Requires
/// 2 <= c <= n.
double delta(const UtilityFunction& w, int n, int c,
             const QuadratureConfig& q = {});

/// Second difference of E_c for c >= 3:
///   (1/(c-2)) * integral of w(x) (1-x)^(c-3) ((c-1)x - 1).
/// Independent of n (the forced-acceptance terms cancel); nonpositive for
/// every nonincreasing w, which is what makes E_c concave in c.
double second_delta(const UtilityFunction& w, int c,
                    const QuadratureConfig& q = {});

/// E_c for every c in [1, n], as a vector indexed by c (slot 0 unused).
/// Computed along the per-term route: one integral per t plus suffix sums,
/// so a full scan costs n quadratures instead of n^2.
std::vector<double> expected_utility_series(const UtilityFunction& w, int n,
                                            const QuadratureConfig& q = {});

}  // namespace secretary
