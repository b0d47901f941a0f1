#include "secretary/evaluator.hpp"

#include <cmath>

namespace secretary {

namespace {

// (1-x)^m without underflow-by-repeated-multiplication.
double pow1m(double x, long m) {
    if (m == 0) return 1.0;
    if (x >= 1.0) return 0.0;
    return std::exp(static_cast<double>(m) * std::log1p(-x));
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

// sum over t in [c, n-1] of (1-x)^(t-1)/(t-1), i.e. sum of y^m/m for
// m in [c-1, n-2]. `inv` holds 1/m. The geometric tail bound
// y^(m+1)/((m+1) x) cuts the sum early away from x = 0.
double record_kernel(double x, int c, int n, double tail_tol,
                     const std::vector<double>& inv) {
    int m0 = c - 1;
    int m1 = n - 2;
    if (m0 > m1) return 0.0;
    KahanSum s;
    if (x <= 0.0) {  // partial harmonic sum, no decay to exploit
        for (int m = m0; m <= m1; ++m) s.add(inv[m]);
        return s.sum;
    }
    if (x >= 1.0) return 0.0;
    double y = 1.0 - x;
    double pw = pow1m(x, m0);
    for (int m = m0; m <= m1; ++m) {
        s.add(pw * inv[m]);
        if (m < m1 && pw * y * inv[m + 1] / x < tail_tol) break;
        pw *= y;
        // refresh against multiplicative drift on very long sums
        if ((m - m0) % 8192 == 8191) pw = pow1m(x, m + 1);
    }
    return s.sum;
}

std::vector<double> inverse_table(int n) {
    std::vector<double> inv(static_cast<std::size_t>(n) + 1, 0.0);
    for (int m = 1; m <= n; ++m) inv[m] = 1.0 / m;
    return inv;
}

double utility_integral(const UtilityFunction& w, const QuadratureConfig& q) {
    return integrate_with_breakpoints([&](double x) { return w(x); }, 0.0, 1.0,
                                      w.interior_breakpoints(), q);
}

// Mandatory subdivision points covering features between the scales 1/hi_m
// and 1/lo_m: a kernel (1-x)^m is a spike of width ~1/m that a coarse
// Simpson pass would otherwise step right over.
void append_scale_ladder(std::vector<double>& pts, double lo_m, double hi_m) {
    if (hi_m < lo_m) std::swap(lo_m, hi_m);
    if (hi_m <= 4) return;  // wide kernels are visible to the initial grid
    for (double x = 0.25 / hi_m; x < std::min(1.0, 32.0 / std::max(lo_m, 1.0));
         x *= 2.0)
        pts.push_back(x);
}

// integral of w(x) (1-x)^(t-1)
double best_integral(const UtilityFunction& w, int t, const QuadratureConfig& q) {
    auto pts = w.interior_breakpoints();
    append_scale_ladder(pts, t - 1, t - 1);
    return integrate_with_breakpoints(
        [&, t](double x) { return w(x) * pow1m(x, t - 1); }, 0.0, 1.0, pts, q);
}

void check_nc(int n, int c) {
    if (n < 2) throw std::domain_error("expected_utility requires n >= 2");
    if (c < 1 || c > n)
        throw std::domain_error("cutoff c must lie in [1, n]");
}

}  // namespace

double accept_probability(int n, int c, int t) {
    if (n < 2) throw std::domain_error("accept_probability requires n >= 2");
    if (c < 2 || c > n)
        throw std::domain_error(
            "accept_probability requires 2 <= c <= n (the c = 1 policy is a "
            "special case of expected_utility)");
    if (t < c || t > n)
        throw std::domain_error("accept_probability requires c <= t <= n");
    if (t < n)
        return (c - 1) / (static_cast<double>(t) * (t - 1));
    return static_cast<double>(c - 1) / (n - 1);
}

double best_of_t_expectation(const UtilityFunction& w, int t,
                             const QuadratureConfig& q) {
    if (t < 1) throw std::domain_error("best_of_t_expectation requires t >= 1");
    QuadratureConfig qt = q;
    qt.abs_tol = q.abs_tol / t;
    return t * best_integral(w, t, qt);
}

PolicyEval expected_utility(const UtilityFunction& w, int n, int c,
                            const QuadratureConfig& q) {
    check_nc(n, c);
    PolicyEval eval;
    eval.n = n;
    eval.c = c;
    if (c == 1) {
        eval.expected_utility = utility_integral(w, q);
        eval.accept_probs = {{1, 1.0}};
        return eval;
    }
    double mean_w = utility_integral(w, q);
    // the (c-1) prefactor scales quadrature error too, so tighten the
    // inner budgets to keep the final E within q.abs_tol
    if (q.inner_sum_strategy == InnerSumStrategy::swapped_kernel) {
        QuadratureConfig qs = q;
        qs.abs_tol = q.abs_tol / (c - 1);
        auto inv = inverse_table(n);
        double tail_tol = qs.abs_tol / 10.0;
        auto pts = w.interior_breakpoints();
        append_scale_ladder(pts, c, n);
        double sum = integrate_with_breakpoints(
            [&](double x) { return w(x) * record_kernel(x, c, n, tail_tol, inv); },
            0.0, 1.0, pts, qs);
        eval.expected_utility = (c - 1) * (sum + mean_w / (n - 1));
    } else {
        QuadratureConfig qt = q;
        qt.abs_tol = q.abs_tol / ((c - 1) * (2.0 + std::log(static_cast<double>(n))));
        KahanSum s;
        for (int t = c; t <= n - 1; ++t)
            s.add(best_integral(w, t, qt) / (t - 1));
        eval.expected_utility = (c - 1) * (s.sum + mean_w / (n - 1));
    }
    eval.accept_probs.reserve(n - c + 1);
    for (int t = c; t <= n; ++t)
        eval.accept_probs.emplace_back(t, accept_probability(n, c, t));
    return eval;
}

double delta(const UtilityFunction& w, int n, int c, const QuadratureConfig& q) {
    check_nc(n, c);
    if (c < 2) throw std::domain_error("delta requires c >= 2");
    if (c == 2)
        return expected_utility(w, n, 2, q).expected_utility -
               expected_utility(w, n, 1, q).expected_utility;
    double mean_w = utility_integral(w, q);
    if (q.inner_sum_strategy == InnerSumStrategy::swapped_kernel) {
        auto inv = inverse_table(n);
        double tail_tol = q.abs_tol / 10.0;
        auto pts = w.interior_breakpoints();
        append_scale_ladder(pts, c - 2, n);
        double sum = integrate_with_breakpoints(
            [&](double x) {
                return w(x) * (record_kernel(x, c, n, tail_tol, inv) - pow1m(x, c - 2));
            },
            0.0, 1.0, pts, q);
        return sum + mean_w / (n - 1);
    }
    QuadratureConfig qt = q;
    qt.abs_tol = q.abs_tol / (3.0 + std::log(static_cast<double>(n)));
    KahanSum s;
    for (int t = c; t <= n - 1; ++t)
        s.add(best_integral(w, t, qt) / (t - 1));
    return s.sum - best_integral(w, c - 1, qt) + mean_w / (n - 1);
}

double second_delta(const UtilityFunction& w, int c, const QuadratureConfig& q) {
    if (c < 3) throw std::domain_error("second_delta requires c >= 3");
    auto pts = w.interior_breakpoints();
    append_scale_ladder(pts, c - 3, c - 3);
    pts.push_back(1.0 / (c - 1));  // kernel sign change
    double integral = integrate_with_breakpoints(
        [&](double x) { return w(x) * pow1m(x, c - 3) * ((c - 1) * x - 1.0); },
        0.0, 1.0, pts, q);
    return integral / (c - 2);
}

std::vector<double> expected_utility_series(const UtilityFunction& w, int n,
                                            const QuadratureConfig& q) {
    if (n < 2) throw std::domain_error("expected_utility_series requires n >= 2");
    double mean_w = utility_integral(w, q);
    // worst-case error of E_c is (c-1) ln(n/c) times the per-term error,
    // maximized near c = n/e at about 0.37 n; budget each term accordingly
    QuadratureConfig qt = q;
    qt.abs_tol = q.abs_tol / (3.0 * n);
    std::vector<double> integrals(static_cast<std::size_t>(n), 0.0);  // [t] = I_t, t in [2, n-1]
    for (int t = 2; t <= n - 1; ++t) integrals[t] = best_integral(w, t, qt);

    std::vector<double> series(static_cast<std::size_t>(n) + 1, 0.0);
    series[1] = mean_w;
    KahanSum suffix;  // sum over t in [c, n-1] of I_t/(t-1)
    double forced = mean_w / (n - 1);
    series[n] = (n - 1) * forced;
    for (int c = n - 1; c >= 2; --c) {
        suffix.add(integrals[c] / (c - 1));
        series[c] = (c - 1) * (suffix.sum + forced);
    }
    return series;
}

}  // namespace secretary
