#include "secretary/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace secretary {

namespace {

struct AdaptState {
    const std::function<double(double)>& f;
    int max_depth;
    double unresolved_err = 0;  // error stuck at max_depth leaves
};

double simpson(double fa, double fm, double fb, double width) {
    return width / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(AdaptState& st, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    // interval narrower than machine resolution: keep the current estimate
    if (lm <= a || rm >= b) return whole;

    double flm = st.f(lm);
    double frm = st.f(rm);
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = (left + right - whole) / 15.0;
    // the Richardson estimate runs optimistic on peaked kernels; accept
    // with a safety factor so the true error stays inside the budget
    if (std::abs(err) <= 0.25 * tol) return left + right + err;
    if (depth >= st.max_depth) {
        st.unresolved_err += std::abs(err);
        return left + right + err;
    }
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth,
                          double* unresolved) {
    if (a == b) return 0.0;
    AdaptState st{f, max_depth};
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = simpson(fa, fm, fb, b - a);
    double result = adapt(st, a, b, fa, fm, fb, whole, tol, 0);
    *unresolved += st.unresolved_err;
    return result;
}

void check_config(const QuadratureConfig& q) {
    if (!(q.abs_tol > 0))
        throw std::domain_error("quadrature abs_tol must be positive");
    if (q.max_depth < 1)
        throw std::domain_error("quadrature max_depth must be >= 1");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& q) {
    check_config(q);
    if (!(a <= b)) throw std::domain_error("integration bounds must satisfy a <= b");
    double unresolved = 0;
    double result = integrate_interval(f, a, b, q.abs_tol, q.max_depth, &unresolved);
    // leaves stuck at max_depth are tolerable while their combined error
    // estimate stays inside the requested tolerance
    if (unresolved > q.abs_tol)
        throw NumericError("quadrature failed to converge within max_depth",
                           result, unresolved + q.abs_tol);
    return result;
}

double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  double a, double b,
                                  const std::vector<double>& breakpoints,
                                  const QuadratureConfig& q) {
    check_config(q);
    if (!(a <= b)) throw std::domain_error("integration bounds must satisfy a <= b");
    if (a == b) return 0.0;

    std::vector<double> pts;
    pts.push_back(a);
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double total_width = b - a;
    double sum = 0;
    double unresolved = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double tol = q.abs_tol * (pts[i + 1] - pts[i]) / total_width;
        sum += integrate_interval(f, pts[i], pts[i + 1], tol, q.max_depth,
                                  &unresolved);
    }
    if (unresolved > q.abs_tol)
        throw NumericError("quadrature failed to converge within max_depth",
                           sum, unresolved + q.abs_tol);
    return sum;
}

}  // namespace secretary
