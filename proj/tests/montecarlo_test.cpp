#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "corpus.hpp"
#include "secretary/evaluator.hpp"
#include "secretary/montecarlo.hpp"
#include "secretary/rng.hpp"
#include "secretary/topk.hpp"

using namespace secretary;

namespace {

SimConfig make_cfg(SimVariant v, int n, int c, int k, std::uint64_t trials,
                   std::uint64_t seed) {
    SimConfig cfg;
    cfg.variant = v;
    cfg.n = n;
    cfg.c = c;
    cfg.k = k;
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("topk sanity at n = 2") {
    auto r = simulate(make_cfg(SimVariant::topk, 2, 2, 1, 100000, 7));
    CHECK(std::abs(r.mean - 0.5) <= 4 * r.std_error);
    CHECK(r.trials == 100000);
    CHECK(r.seed == 7);
}

TEST_CASE("constant payoff has zero variance") {
    auto r = simulate(make_cfg(SimVariant::p2, 50, 10, 0, 5000, 3),
                      UtilityFunction::constant(-1));
    CHECK(r.mean == -1.0);
    CHECK(r.std_error == 0.0);
}

TEST_CASE("uniform-type simulation agrees with the exact evaluator") {
    auto negx = UtilityFunction::piecewise_linear({{0, 0}, {1, -1}});
    auto r = simulate(make_cfg(SimVariant::p2, 3, 2, 0, 400000, 11), negx);
    CHECK(std::abs(r.mean - (-5.0 / 12.0)) <= 4 * r.std_error);
}

TEST_CASE("rank simulation agrees with the closed-form top-k probability") {
    auto r = simulate(make_cfg(SimVariant::topk, 30, 10, 3, 400000, 19));
    double exact = success_probability_analytic(30, 3, 10);
    CHECK(std::abs(r.mean - exact) <= 4 * r.std_error);
}

TEST_CASE("rank-game payoff agrees with full enumeration at small n") {
    // exact rank-game expectation over all 6! orders, independent of any
    // formula in the evaluator
    const int n = 6, c = 3;
    auto w = UtilityFunction::piecewise_linear({{0, 1}, {0.2, 0.2}, {1, 0}});
    std::vector<int> perm{1, 2, 3, 4, 5, 6};
    double total = 0;
    std::int64_t count = 0;
    do {
        int best = perm[0];
        int accepted = perm[n - 1];
        for (int pos = 2; pos <= n; ++pos) {
            if (perm[pos - 1] < best) {
                best = perm[pos - 1];
                if (pos >= c) {
                    accepted = perm[pos - 1];
                    break;
                }
            }
        }
        total += w(static_cast<double>(accepted) / n);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    double exact = total / static_cast<double>(count);

    auto r = simulate(make_cfg(SimVariant::p1, n, c, 0, 400000, 23), w);
    CHECK(std::abs(r.mean - exact) <= 4 * r.std_error);
}

TEST_CASE("identical configs reproduce bit-identical results") {
    auto cfg = make_cfg(SimVariant::p1, 40, 6, 0, 120000, 123);
    auto lin = UtilityFunction::linear();
    auto a = simulate(cfg, lin);
    auto b = simulate(cfg, lin);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);

    cfg.seed = 124;
    auto c = simulate(cfg, lin);
    CHECK(a.mean != c.mean);
}

TEST_CASE("debug permutation checks do not alter results") {
    auto cfg = make_cfg(SimVariant::topk, 25, 5, 2, 20000, 5);
    auto plain = simulate(cfg);
    setenv("SECRETARY_MC_DEBUG", "1", 1);
    auto checked = simulate(cfg);
    unsetenv("SECRETARY_MC_DEBUG");
    CHECK(plain.mean == checked.mean);
    CHECK(plain.std_error == checked.std_error);
}

TEST_CASE("degenerate top-k always succeeds") {
    auto r = simulate(make_cfg(SimVariant::topk, 5, 3, 5, 2000, 1));
    CHECK(r.mean == 1.0);
    CHECK(r.std_error == 0.0);
}

TEST_CASE("config validation") {
    auto lin = UtilityFunction::linear();
    CHECK_THROWS_AS(simulate(make_cfg(SimVariant::p2, 5, 6, 0, 100, 1), lin),
                    std::domain_error);
    CHECK_THROWS_AS(simulate(make_cfg(SimVariant::p2, 5, 0, 0, 100, 1), lin),
                    std::domain_error);
    CHECK_THROWS_AS(simulate(make_cfg(SimVariant::p2, 5, 2, 0, 0, 1), lin),
                    std::domain_error);
    CHECK_THROWS_AS(simulate(make_cfg(SimVariant::p2, 5, 2, 3, 100, 1), lin),
                    std::domain_error);
    CHECK_THROWS_AS(simulate(make_cfg(SimVariant::topk, 5, 2, 0, 100, 1)),
                    std::domain_error);
    CHECK_THROWS_AS(simulate(make_cfg(SimVariant::topk, 5, 2, 6, 100, 1)),
                    std::domain_error);
    CHECK_THROWS_AS(simulate(make_cfg(SimVariant::p2, 5, 2, 0, 100, 1)),
                    std::domain_error);
}

TEST_CASE("order-statistic concentration") {
    CHECK(order_stat_deviation(10000, 200, 1) <= 0.01);
    double single = order_stat_deviation(2, 1, 42);
    CHECK((single == 0.0 || single == 1.0));
}

TEST_CASE("per-order-statistic lower tail obeys the Chernoff bound") {
    // median of n uniforms below i/n - eps: probability < exp(-2 n eps^2)
    const int n = 10000, trials = 1000;
    const double eps = 0.01;
    const int i = n / 2;
    int hits = 0;
    std::vector<double> sample(n);
    for (int j = 0; j < trials; ++j) {
        SplitMix64 rng(2024, static_cast<std::uint64_t>(j));
        for (auto& s : sample) s = rng.next_double();
        std::nth_element(sample.begin(), sample.begin() + (i - 1), sample.end());
        if (sample[i - 1] < static_cast<double>(i) / n - eps) ++hits;
    }
    double empirical = static_cast<double>(hits) / trials;
    double chernoff = std::exp(-2.0 * n * eps * eps);
    double binom_stderr = std::sqrt(chernoff * (1 - chernoff) / trials);
    CHECK(empirical <= chernoff + 3 * binom_stderr);
}

TEST_CASE("rank-game and type-game means converge to each other") {
    auto lin = UtilityFunction::linear();
    CHECK(p1_p2_gap(UtilityFunction::constant(-1), 20, 4, 2000, 9) == 0.0);

    double gap1000 = p1_p2_gap(lin, 1000, 32, 200000, 7);
    CHECK(gap1000 <= 10.0 * std::log(1000.0) / std::sqrt(1000.0));  // L = 1

    double avg10 = 0, avg1000 = 0;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        avg10 += p1_p2_gap(lin, 10, 3, 200000, s);
        avg1000 += p1_p2_gap(lin, 1000, 32, 200000, s);
    }
    CHECK(avg1000 / 5 < avg10 / 5);
}

}  // TEST_SUITE
