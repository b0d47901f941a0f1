#include "secretary/topk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "secretary/detail/parallel_for.hpp"

namespace secretary {

namespace {

constexpr int kEnumerationLimit = 12;
constexpr int kExactBinomialLimit = 30;

void check_nkc(int n, int k, int c, int k_max) {
    if (n < 2) throw std::domain_error("top-k requires n >= 2");
    if (k < 1 || k > k_max)
        throw std::domain_error("top-k requires 1 <= k <= " +
                                std::string(k_max == n ? "n" : "n-1"));
    if (c < 2 || c > n) throw std::domain_error("top-k cutoff must lie in [2, n]");
}

std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // exact for n <= 30: divide first where possible via pairing
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(n-i, k-1)/C(n, k) for i in [2, n], the first-good-position weights.
std::vector<double> good_position_weights(int n, int k) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1, 0.0);
    if (n <= kExactBinomialLimit) {
        double denom = static_cast<double>(binomial_u64(n, k));
        for (int i = 2; i <= n; ++i)
            g[i] = static_cast<double>(binomial_u64(n - i, k - 1)) / denom;
    } else {
        double log_denom = log_binomial(n, k);
        for (int i = 2; i <= n; ++i) {
            if (n - i < k - 1) continue;
            g[i] = std::exp(log_binomial(n - i, k - 1) - log_denom);
        }
    }
    return g;
}

// (1-x)^e with the e = 0 convention pinned to 1 (x = 1 included).
double pow1m_int(double x, int e) {
    if (e == 0) return 1.0;
    if (x >= 1.0) return 0.0;
    return std::exp(e * std::log1p(-x));
}

struct KahanSum {
    double sum = 0;
    double comp = 0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double success_probability(int n, int k, int c) {
    check_nkc(n, k, c, n - 1);
    auto g = good_position_weights(n, k);
    KahanSum s;
    for (int i = c; i <= n; ++i)
        if (g[i] != 0) s.add(g[i] / (i - 1));
    return (c - 1) * s.sum;
}

double success_probability_analytic(int n, int k, int c) {
    check_nkc(n, k, c, n);
    // ratio r_t = C(n-k, t)/C(n, t) = prod_{j<t} (n-k-j)/(n-j), built
    // incrementally; q_t = 1 - r_t is the chance a random t-subset hits
    // the top k.
    KahanSum s;
    double r = 1.0;
    for (int t = 1; t <= n - 1; ++t) {
        r *= static_cast<double>(n - k - (t - 1)) / static_cast<double>(n - (t - 1));
        if (r < 0) r = 0;  // t exceeded n-k: subset must contain a good one
        if (t >= c) s.add((1.0 - r) / (static_cast<double>(t) * (t - 1)));
    }
    double forced = static_cast<double>(k) / n / (n - 1);
    return (c - 1) * (s.sum + forced);
}

std::vector<std::vector<double>> exact_success_table(int n, int k_max) {
    if (n < 2) throw std::domain_error("exact_success_table requires n >= 2");
    if (k_max < 1 || k_max > n)
        throw std::domain_error("exact_success_table requires 1 <= k_max <= n");
    if (n > kEnumerationLimit)
        throw CapacityError(
            "exact enumeration is limited to n <= 12 (n! rank orders); use "
            "montecarlo::simulate for larger n");

    // hist[c][r] = number of orders where cutoff c accepts overall rank r
    // (r capped at k_max+1, lumping everything worse together). One pass per
    // permutation serves every cutoff: walk the best-so-far positions once.
    using Hist = std::vector<std::array<std::uint64_t, 16>>;
    const int r_cap = k_max;

    // Parallel split over the first element; each branch permutes the rest
    // and merges exact integer counts, so the result is scheduling-independent.
    std::vector<Hist> branch_hist(static_cast<std::size_t>(n));
    detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t b) {
        Hist hist(static_cast<std::size_t>(n) + 1);
        for (auto& row : hist) row.fill(0);
        std::vector<int> rest;
        rest.reserve(n - 1);
        for (int v = 1; v <= n; ++v)
            if (v != static_cast<int>(b) + 1) rest.push_back(v);
        std::vector<int> perm(static_cast<std::size_t>(n));
        perm[0] = static_cast<int>(b) + 1;
        std::vector<int> records;
        records.reserve(n);
        do {
            std::copy(rest.begin(), rest.end(), perm.begin() + 1);
            records.clear();
            int best = perm[0];
            records.push_back(1);
            for (int pos = 2; pos <= n; ++pos) {
                if (perm[pos - 1] < best) {
                    best = perm[pos - 1];
                    records.push_back(pos);
                }
            }
            std::size_t ri = 0;
            for (int c = 2; c <= n; ++c) {
                while (ri < records.size() && records[ri] < c) ++ri;
                int accepted_pos = ri < records.size() ? records[ri] : n;
                int rank = perm[accepted_pos - 1];
                ++hist[c][std::min(rank, r_cap + 1)];
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        branch_hist[b] = std::move(hist);
    });

    double total = 1;
    for (int v = 2; v <= n; ++v) total *= v;  // n! fits a double exactly for n <= 12

    std::vector<std::vector<double>> result(
        static_cast<std::size_t>(n) + 1,
        std::vector<double>(static_cast<std::size_t>(k_max) + 1, 0.0));
    for (int c = 2; c <= n; ++c) {
        std::uint64_t cumulative = 0;
        for (int k = 1; k <= k_max; ++k) {
            for (const auto& hist : branch_hist) cumulative += hist[c][k];
            result[c][k] = static_cast<double>(cumulative) / total;
        }
    }
    return result;
}

double success_probability_exact(int n, int k, int c) {
    check_nkc(n, k, c, n);
    return exact_success_table(n, k)[c][k];
}

double success_delta(int n, int k, int c) {
    check_nkc(n, k, c, n - 1);
    if (c < 3) throw std::domain_error("success_delta requires c >= 3");
    KahanSum s;
    for (int i = c; i <= n; ++i)
        s.add(pow1m_int(static_cast<double>(i) / n, k - 1) / (i - 1));
    double boundary = pow1m_int(static_cast<double>(c - 1) / n, k - 1);
    // normalized by k/n, the continuum weight of C(n-i,k-1)/C(n,k); this
    // keeps the expression an actual approximation of P(c) - P(c-1) for
    // every k (and reduces to the classical 1/n form at k = 1)
    return (s.sum - boundary) * static_cast<double>(k) / n;
}

TopKModel topk_model(int n, int k) {
    if (n < 2) throw std::domain_error("topk_model requires n >= 2");
    if (k < 1 || k > n - 1) throw std::domain_error("topk_model requires 1 <= k <= n-1");
    auto g = good_position_weights(n, k);
    TopKModel model{n, k, {}};
    model.success_probs.resize(static_cast<std::size_t>(n) - 1);
    // suffix sums make the whole c-sweep linear in n
    KahanSum suffix;
    for (int c = n; c >= 2; --c) {
        if (g[c] != 0) suffix.add(g[c] / (c - 1));
        model.success_probs[c - 2] = {c, (c - 1) * suffix.sum};
    }
    return model;
}

TopKOptimum optimal_cutoff_topk(int n, int k) {
    if (n < 3) throw std::domain_error("optimal_cutoff_topk requires n >= 3");
    if (k < 1 || k > n - 1)
        throw std::domain_error("optimal_cutoff_topk requires 1 <= k <= n-1");
    auto model = topk_model(n, k);
    int c_opt = 2;
    double best = -1;
    for (const auto& [c, p] : model.success_probs) {
        if (p > best) {  // strict: ties resolve to the smallest c
            best = p;
            c_opt = c;
        }
    }
    return TopKOptimum{c_opt, success_probability_analytic(n, k, c_opt), best};
}

}  // namespace secretary
