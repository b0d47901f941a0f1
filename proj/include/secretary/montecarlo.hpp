#pragma once

#include <cstdint>

#include "secretary/utility.hpp"

namespace secretary {

/// Which game a simulation plays.
///   p1:   random rank permutation, payoff w(rank/n)
///   p2:   i.i.d. uniform types, payoff w(accepted type)
///   topk: random rank permutation, payoff 1 if accepted rank <= k else 0
enum class SimVariant { p1, p2, topk };

struct SimConfig {
    SimVariant variant = SimVariant::p2;
    int n = 0;
    int c = 1;  // cutoff, in [1, n]
    int k = 0;  // top-k target; required (>= 1) iff variant == topk
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct SimResult {
    double mean = 0;
    double std_error = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Runs cfg.trials independent episodes of the cutoff rule. Each trial j
/// draws from an RNG substream that is a pure function of (seed, j), and
/// chunk statistics are merged in fixed order, so the result is
/// bit-identical regardless of thread count or scheduling.
///
/// Setting the environment variable SECRETARY_MC_DEBUG=1 makes p1/topk
/// episodes verify that every rank 1..n appears exactly once per episode.
SimResult simulate(const SimConfig& cfg, const UtilityFunction& w);

/// topk variant only (no utility needed: the payoff is the 0/1 success).
SimResult simulate(const SimConfig& cfg);

/// Sorts n uniforms per trial and checks the order-statistic concentration
/// bound max_i |s_(i) - i/n| <= ln(n)/sqrt(n). Returns the fraction of
/// trials violating it (small for large n).
double order_stat_deviation(int n, std::uint64_t trials, std::uint64_t seed);

/// |mean_p1 - mean_p2| from paired runs on independent substreams of seed.
/// The rank game and the uniform-type game converge to each other as n
/// grows; this measures the remaining gap.
double p1_p2_gap(const UtilityFunction& w, int n, int c, std::uint64_t trials,
                 std::uint64_t seed);

}  // namespace secretary
