#pragma once

#include <optional>

#include "secretary/evaluator.hpp"

namespace secretary {

enum class OptimizeMethod { binary_search, full_scan };

struct CutoffResult {
    int c_opt = 1;
    double value = 0;  // E at c_opt
    OptimizeMethod method = OptimizeMethod::full_scan;
    /// sqrt((L/w_hat) n) when the constants exist; nullopt when the utility
    /// is constant (w_hat = 0), flat near zero (L = 0, the bound degenerates
    /// to 0 and says nothing), or not Lipschitz near zero.
    std::optional<double> bound;
};

/// Differences smaller than this are treated as exact ties; ties resolve
/// toward the smallest cutoff so constant utilities deterministically
/// return c = 1.
inline constexpr double kSignTol = 1e-11;

/// Brute-force argmax of E_c over c in [1, n]. The oracle the binary
/// search is validated against.
CutoffResult optimal_cutoff_scan(const UtilityFunction& w, int n,
                                 const QuadratureConfig& q = {});

/// Optimal cutoff via binary search on the sign of the first difference,
/// justified by the concavity of E_c: O(log n) difference evaluations for
/// the boundary, then a local comparison that applies the same tie-breaking
/// as the full scan.
CutoffResult optimal_cutoff(const UtilityFunction& w, int n,
                            const QuadratureConfig& q = {});

/// Asymptotic cutoff upper bound sqrt((L/w_hat) n); nullopt when
/// inapplicable (see CutoffResult::bound).
std::optional<double> cutoff_upper_bound(const UtilityFunction& w, int n,
                                         double epsilon = 0.1);

}  // namespace secretary
