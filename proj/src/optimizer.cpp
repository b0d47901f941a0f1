#include "secretary/optimizer.hpp"

#include <cmath>

namespace secretary {

namespace {

// Smallest argmax under the shared tie tolerance; candidates ascend in c.
int argmax_tied(const std::vector<std::pair<int, double>>& candidates) {
    int best_c = candidates.front().first;
    double best_v = candidates.front().second;
    for (const auto& [c, v] : candidates) {
        if (v > best_v + kSignTol) {
            best_c = c;
            best_v = v;
        }
    }
    return best_c;
}

}  // namespace

std::optional<double> cutoff_upper_bound(const UtilityFunction& w, int n,
                                         double epsilon) {
    if (n < 2) throw std::domain_error("cutoff_upper_bound requires n >= 2");
    auto constants = bound_constants(w, epsilon);
    if (!constants) return std::nullopt;                // not Lipschitz near 0
    if (constants->w_hat <= 1e-9) return std::nullopt;  // constant utility
    if (constants->lipschitz == 0) return std::nullopt; // flat near 0, bound degenerates
    return std::sqrt(constants->lipschitz / constants->w_hat * n);
}

CutoffResult optimal_cutoff_scan(const UtilityFunction& w, int n,
                                 const QuadratureConfig& q) {
    if (n < 2) throw std::domain_error("optimal_cutoff_scan requires n >= 2");
    auto series = expected_utility_series(w, n, q);
    int best_c = 1;
    double best_v = series[1];
    for (int c = 2; c <= n; ++c) {
        if (series[c] > best_v + kSignTol) {
            best_c = c;
            best_v = series[c];
        }
    }
    return CutoffResult{best_c, best_v, OptimizeMethod::full_scan,
                        cutoff_upper_bound(w, n)};
}

CutoffResult optimal_cutoff(const UtilityFunction& w, int n,
                            const QuadratureConfig& q) {
    if (n < 2) throw std::domain_error("optimal_cutoff requires n >= 2");
    auto positive = [&](int c) { return delta(w, n, c, q) > kSignTol; };

    // Largest c in [2, n] with a strictly positive difference. Concavity
    // makes the predicate monotone (true ... true false ... false).
    int boundary = 1;
    if (positive(2)) {
        int lo = 2, hi = n;
        if (positive(n)) {
            boundary = n;
        } else {
            while (hi - lo > 1) {
                int mid = lo + (hi - lo) / 2;
                (positive(mid) ? lo : hi) = mid;
            }
            boundary = lo;
        }
    }

    // Local window comparison with scan tie-breaking; the boundary is the
    // smallest maximizer unless a numerical near-tie sits next to it.
    std::vector<std::pair<int, double>> window;
    for (int c = std::max(1, boundary - 1); c <= std::min(n, boundary + 1); ++c)
        window.emplace_back(c, expected_utility(w, n, c, q).expected_utility);
    int c_opt = argmax_tied(window);
    double value = 0;
    for (const auto& [c, v] : window)
        if (c == c_opt) value = v;
    return CutoffResult{c_opt, value, OptimizeMethod::binary_search,
                        cutoff_upper_bound(w, n)};
}

}  // namespace secretary
