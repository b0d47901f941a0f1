#include "secretary/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "secretary/detail/parallel_for.hpp"
#include "secretary/rng.hpp"

namespace secretary {

namespace {

constexpr std::uint64_t kChunkTrials = 1 << 14;  // fixed: part of determinism

struct Welford {
    std::uint64_t count = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x) {
        ++count;
        double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    // Chan's merge; called in fixed chunk order.
    void merge(const Welford& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        double d = o.mean - mean;
        std::uint64_t total = count + o.count;
        mean += d * static_cast<double>(o.count) / static_cast<double>(total);
        m2 += o.m2 + d * d * static_cast<double>(count) *
                         static_cast<double>(o.count) / static_cast<double>(total);
        count = total;
    }
};

bool debug_checks_enabled() {
    const char* v = std::getenv("SECRETARY_MC_DEBUG");
    return v != nullptr && v[0] != '\0' && v[0] != '0';
}

// One uniform-type episode: returns the accepted type.
double run_p2_episode(SplitMix64& rng, int n, int c) {
    double best = 2.0;
    for (int i = 1; i < n; ++i) {
        double u = rng.next_double();
        if (u < best) {
            best = u;
            if (i >= c) return u;
        }
    }
    return rng.next_double();  // forced acceptance of applicant n
}

// One rank-permutation episode: returns the accepted overall rank in [1, n].
// Lazy Fisher-Yates: position i's rank is fixed the moment it is interviewed,
// so the episode can stop at acceptance without changing the distribution.
int run_rank_episode(SplitMix64& rng, int n, int c, std::vector<int>& scratch,
                     bool debug) {
    scratch.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) scratch[i] = i + 1;
    int accepted = 0;
    int best = n + 1;
    for (int i = 0; i < n; ++i) {
        auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(scratch[i], scratch[j]);
        int rank = scratch[i];
        if (rank < best) {
            best = rank;
            if (i + 1 >= c && accepted == 0) {
                accepted = rank;
                if (!debug) return accepted;
            }
        }
    }
    if (accepted == 0) accepted = scratch[n - 1];  // forced last slot
    if (debug) {
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (int r : scratch) {
            if (r < 1 || r > n || seen[r])
                throw std::logic_error("montecarlo debug: episode is not a permutation");
            seen[r] = true;
        }
    }
    return accepted;
}

void check_config(const SimConfig& cfg, bool has_utility) {
    if (cfg.n < 1) throw std::domain_error("simulation requires n >= 1");
    if (cfg.c < 1 || cfg.c > cfg.n)
        throw std::domain_error("simulation cutoff must lie in [1, n]");
    if (cfg.trials < 1) throw std::domain_error("simulation requires trials >= 1");
    if (cfg.variant == SimVariant::topk) {
        if (cfg.k < 1 || cfg.k > cfg.n)
            throw std::domain_error("topk simulation requires 1 <= k <= n");
    } else {
        if (cfg.k != 0)
            throw std::domain_error("k is only meaningful for the topk variant");
        if (!has_utility)
            throw std::domain_error("p1/p2 simulation requires a utility function");
    }
}

SimResult simulate_impl(const SimConfig& cfg, const UtilityFunction* w) {
    check_config(cfg, w != nullptr);
    const bool debug = debug_checks_enabled();
    const std::uint64_t chunks = (cfg.trials + kChunkTrials - 1) / kChunkTrials;

    std::vector<Welford> stats(chunks);
    detail::parallel_for(chunks, [&](std::size_t chunk) {
        Welford acc;
        std::vector<int> scratch;
        std::uint64_t begin = chunk * kChunkTrials;
        std::uint64_t end = std::min(begin + kChunkTrials, cfg.trials);
        for (std::uint64_t j = begin; j < end; ++j) {
            SplitMix64 rng(cfg.seed, j);
            double payoff = 0;
            switch (cfg.variant) {
                case SimVariant::p2:
                    payoff = (*w)(run_p2_episode(rng, cfg.n, cfg.c));
                    break;
                case SimVariant::p1: {
                    int rank = run_rank_episode(rng, cfg.n, cfg.c, scratch, debug);
                    payoff = (*w)(static_cast<double>(rank) / cfg.n);
                    break;
                }
                case SimVariant::topk: {
                    int rank = run_rank_episode(rng, cfg.n, cfg.c, scratch, debug);
                    payoff = rank <= cfg.k ? 1.0 : 0.0;
                    break;
                }
            }
            acc.add(payoff);
        }
        stats[chunk] = acc;
    });

    Welford total;
    for (const auto& s : stats) total.merge(s);

    SimResult result;
    result.mean = total.mean;
    result.std_error =
        total.count > 1
            ? std::sqrt(total.m2 / static_cast<double>(total.count - 1) /
                        static_cast<double>(total.count))
            : 0.0;
    result.trials = cfg.trials;
    result.seed = cfg.seed;
    return result;
}

}  // namespace

SimResult simulate(const SimConfig& cfg, const UtilityFunction& w) {
    return simulate_impl(cfg, &w);
}

SimResult simulate(const SimConfig& cfg) {
    if (cfg.variant != SimVariant::topk)
        throw std::domain_error("p1/p2 simulation requires a utility function");
    return simulate_impl(cfg, nullptr);
}

double order_stat_deviation(int n, std::uint64_t trials, std::uint64_t seed) {
    if (n < 2) throw std::domain_error("order_stat_deviation requires n >= 2");
    if (trials < 1) throw std::domain_error("order_stat_deviation requires trials >= 1");
    const double bound = std::log(static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
    const std::uint64_t chunk_trials = 64;
    const std::uint64_t chunks = (trials + chunk_trials - 1) / chunk_trials;

    std::vector<std::uint64_t> violations(chunks, 0);
    detail::parallel_for(chunks, [&](std::size_t chunk) {
        std::vector<double> sample(static_cast<std::size_t>(n));
        std::uint64_t count = 0;
        std::uint64_t begin = chunk * chunk_trials;
        std::uint64_t end = std::min(begin + chunk_trials, trials);
        for (std::uint64_t j = begin; j < end; ++j) {
            SplitMix64 rng(seed, j);
            for (auto& s : sample) s = rng.next_double();
            std::sort(sample.begin(), sample.end());
            double max_dev = 0;
            for (int i = 1; i <= n; ++i)
                max_dev = std::max(max_dev,
                                   std::abs(sample[i - 1] - static_cast<double>(i) / n));
            if (max_dev > bound) ++count;
        }
        violations[chunk] = count;
    });

    std::uint64_t total = 0;
    for (auto v : violations) total += v;
    return static_cast<double>(total) / static_cast<double>(trials);
}

double p1_p2_gap(const UtilityFunction& w, int n, int c, std::uint64_t trials,
                 std::uint64_t seed) {
    SimConfig cfg;
    cfg.n = n;
    cfg.c = c;
    cfg.trials = trials;

    cfg.variant = SimVariant::p1;
    cfg.seed = SplitMix64::mix(seed + 0x1);
    double m1 = simulate(cfg, w).mean;

    cfg.variant = SimVariant::p2;
    cfg.seed = SplitMix64::mix(seed + 0x2);
    double m2 = simulate(cfg, w).mean;

    return std::abs(m1 - m2);
}

}  // namespace secretary
