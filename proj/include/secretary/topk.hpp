#pragma once

#include <utility>
#include <vector>

#include "secretary/errors.hpp"

namespace secretary {

/// The asymptotic success-probability model of the top-k objective for one
/// (n, k): values of the model sum for every cutoff c in [2, n].
struct TopKModel {
    int n = 0;
    int k = 0;
    std::vector<std::pair<int, double>> success_probs;
};

struct TopKOptimum {
    int c_opt = 2;
    double p = 0;        // true success probability at c_opt
    double model_p = 0;  // the model value the scan maximized
};

/// Asymptotic model of the probability that the cutoff-c rule accepts one
/// of the k best of n:
///   sum over i in [c, n] of C(n-i, k-1)/C(n, k) * (c-1)/(i-1).
/// The model counts only "first good one is picked" paths, so for k >= 2 it
/// runs below the true probability by the skipped-good-one correction; the
/// gap is quantified in tests against the exact routes below. Exact for
/// k = 1. Binomial ratios are exact integers for n <= 30 and log-gamma
/// differences beyond.
double success_probability(int n, int k, int c);

/// True success probability of the cutoff-c rule, in closed form for any n:
/// conditioned on acceptance at position t, the accepted applicant is the
/// best of a uniform random t-subset, which misses all top-k with
/// probability C(n-k, t)/C(n, t); the forced last slot succeeds with
/// probability k/n independently of reaching it.
double success_probability_analytic(int n, int k, int c);

/// Brute-force oracle: exact success probability over all n! rank orders.
/// Forced acceptance at position n counts as success iff that rank <= k.
/// Throws CapacityError for n > 12 (factorial enumeration); use the Monte
/// Carlo module beyond that.
double success_probability_exact(int n, int k, int c);

/// One enumeration pass producing the exact probability for every cutoff
/// c in [2, n] and every k in [1, k_max]: result[c][k]. Rows 0 and 1 and
/// column 0 are unused. Same n <= 12 limit as success_probability_exact.
std::vector<std::vector<double>> exact_success_table(int n, int k_max);

/// Continuous approximation of P(c) - P(c-1):
///   (1/(nk)) (sum over i in [c, n] of (1-i/n)^(k-1)/(i-1)
///             - (1-(c-1)/n)^(k-1)).
/// Positive while c is far below the optimum and negative past it.
/// Requires 3 <= c <= n.
double success_delta(int n, int k, int c);

/// Model values for every cutoff.
TopKModel topk_model(int n, int k);

/// Full scan of the model over c in [2, n] (no concavity result exists for
/// the top-k objective, so no binary search); ties to the smallest c. The
/// returned p is the true success probability at the chosen cutoff.
TopKOptimum optimal_cutoff_topk(int n, int k);

}  // namespace secretary
