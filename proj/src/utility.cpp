#include "secretary/utility.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <sstream>

namespace secretary {

namespace {

double parse_number(std::string_view token, std::string_view context) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::invalid_argument("utility spec: bad number '" + std::string(token) +
                                    "' in " + std::string(context));
    return value;
}

}  // namespace

double UtilityFunction::base(double x) const {
    switch (kind_) {
        case UtilityKind::linear:
            return 1.0 - x;
        case UtilityKind::power:
            return -std::pow(x, param_);
        case UtilityKind::negated_sqrt:
            return -std::sqrt(x);
        case UtilityKind::step:
            return x < param_ ? 0.0 : -1.0;
        case UtilityKind::piecewise_linear: {
            auto it = std::upper_bound(
                knots_.begin(), knots_.end(), x,
                [](double v, const std::pair<double, double>& k) { return v < k.first; });
            if (it == knots_.end()) return knots_.back().second;  // x == 1
            if (it == knots_.begin()) return knots_.front().second;
            auto [x1, y1] = *it;
            auto [x0, y0] = *(it - 1);
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
        case UtilityKind::polynomial: {
            double v = 0;
            for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it)
                v = v * x + *it;
            return v;
        }
    }
    return 0;  // unreachable
}

double UtilityFunction::operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("utility argument " + std::to_string(x) +
                                " outside [0, 1]");
    return base(x) - shift_;
}

UtilityFunction UtilityFunction::normalized() const {
    UtilityFunction w = *this;
    w.shift_ = base(0.0);  // absolute, so normalizing again is a no-op
    return w;
}

std::vector<double> UtilityFunction::interior_breakpoints() const {
    std::vector<double> pts;
    if (kind_ == UtilityKind::step) {
        pts.push_back(param_);
    } else if (kind_ == UtilityKind::piecewise_linear) {
        for (std::size_t i = 1; i + 1 < knots_.size(); ++i)
            pts.push_back(knots_[i].first);
    }
    return pts;
}

std::optional<double> UtilityFunction::first_discontinuity() const {
    if (kind_ == UtilityKind::step) return param_;
    return std::nullopt;
}

void validate_nonincreasing(const UtilityFunction& w, int grid_points) {
    if (grid_points < 2)
        throw std::invalid_argument("validation grid must have >= 2 points");
    // Sample the grid plus the breakpoints so kinks cannot hide between nodes.
    std::vector<double> xs;
    xs.reserve(grid_points + 4);
    for (int i = 0; i < grid_points; ++i)
        xs.push_back(static_cast<double>(i) / (grid_points - 1));
    for (double b : w.interior_breakpoints()) {
        xs.push_back(b);
        xs.push_back(std::nextafter(b, 0.0));
    }
    std::sort(xs.begin(), xs.end());
    double prev = w(xs.front());
    double scale = std::max(1.0, std::abs(prev));
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double v = w(xs[i]);
        if (v > prev + 1e-12 * scale)
            throw std::invalid_argument(
                "utility is increasing near x = " + std::to_string(xs[i]) +
                "; utilities must be nonincreasing on [0, 1]");
        prev = v;
        scale = std::max(scale, std::abs(v));
    }
}

UtilityFunction UtilityFunction::linear() {
    UtilityFunction w;
    w.kind_ = UtilityKind::linear;
    w.description_ = "linear";
    return w;
}

UtilityFunction UtilityFunction::constant(double value) {
    UtilityFunction w;
    w.kind_ = UtilityKind::polynomial;
    w.coefficients_ = {value};
    std::ostringstream os;
    os << "const:" << value;
    w.description_ = os.str();
    return w;
}

UtilityFunction UtilityFunction::power(double exponent) {
    if (!(exponent > 0))
        throw std::invalid_argument("power utility requires a positive exponent");
    UtilityFunction w;
    w.kind_ = UtilityKind::power;
    w.param_ = exponent;
    std::ostringstream os;
    os << "power:" << exponent;
    w.description_ = os.str();
    return w;
}

UtilityFunction UtilityFunction::negated_sqrt() {
    UtilityFunction w;
    w.kind_ = UtilityKind::negated_sqrt;
    w.description_ = "nsqrt";
    return w;
}

UtilityFunction UtilityFunction::step(double threshold) {
    if (!(threshold > 0 && threshold < 1))
        throw std::invalid_argument("step threshold must lie in (0, 1)");
    UtilityFunction w;
    w.kind_ = UtilityKind::step;
    w.param_ = threshold;
    std::ostringstream os;
    os << "step:" << threshold;
    w.description_ = os.str();
    return w;
}

UtilityFunction UtilityFunction::piecewise_linear(
    std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2)
        throw std::invalid_argument("piecewise-linear utility needs >= 2 knots");
    if (knots.front().first != 0.0)
        throw std::invalid_argument("piecewise-linear knots must start at x = 0");
    if (knots.back().first != 1.0)
        throw std::invalid_argument("piecewise-linear knots must end at x = 1");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].first > knots[i - 1].first))
            throw std::invalid_argument("piecewise-linear knots must be strictly increasing in x");
        if (knots[i].second > knots[i - 1].second)
            throw std::invalid_argument("piecewise-linear table rises at x = " +
                                        std::to_string(knots[i].first) +
                                        "; utilities must be nonincreasing");
    }
    UtilityFunction w;
    w.kind_ = UtilityKind::piecewise_linear;
    w.knots_ = std::move(knots);
    std::ostringstream os;
    os << "pwl:";
    for (std::size_t i = 0; i < w.knots_.size(); ++i) {
        if (i) os << ';';
        os << w.knots_[i].first << ',' << w.knots_[i].second;
    }
    w.description_ = os.str();
    return w;
}

UtilityFunction UtilityFunction::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty())
        throw std::invalid_argument("polynomial utility needs coefficients");
    UtilityFunction w;
    w.kind_ = UtilityKind::polynomial;
    w.coefficients_ = std::move(coefficients);
    std::ostringstream os;
    os << "poly:";
    for (std::size_t i = 0; i < w.coefficients_.size(); ++i) {
        if (i) os << ',';
        os << w.coefficients_[i];
    }
    w.description_ = os.str();
    validate_nonincreasing(w);
    return w;
}

UtilityFunction UtilityFunction::parse(std::string_view spec) {
    auto colon = spec.find(':');
    std::string_view head = spec.substr(0, colon);
    std::string_view arg =
        colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    if (head == "linear") {
        if (!arg.empty()) throw std::invalid_argument("utility spec: 'linear' takes no argument");
        return linear();
    }
    if (head == "nsqrt") {
        if (!arg.empty()) throw std::invalid_argument("utility spec: 'nsqrt' takes no argument");
        return negated_sqrt();
    }
    if (head == "const") return constant(parse_number(arg, "const"));
    if (head == "power") return power(parse_number(arg, "power"));
    if (head == "step") return step(parse_number(arg, "step"));
    if (head == "pwl") {
        std::vector<std::pair<double, double>> knots;
        std::size_t pos = 0;
        while (pos <= arg.size()) {
            auto end = arg.find(';', pos);
            std::string_view pair = arg.substr(pos, end == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : end - pos);
            auto comma = pair.find(',');
            if (comma == std::string_view::npos)
                throw std::invalid_argument("utility spec: bad knot '" + std::string(pair) +
                                            "' (expected x,y)");
            knots.emplace_back(parse_number(pair.substr(0, comma), "pwl knot x"),
                               parse_number(pair.substr(comma + 1), "pwl knot y"));
            if (end == std::string_view::npos) break;
            pos = end + 1;
        }
        return piecewise_linear(std::move(knots));
    }
    throw std::invalid_argument("utility spec: unknown kind '" + std::string(head) + "'");
}

std::optional<double> lipschitz_near_zero(const UtilityFunction& w,
                                          double epsilon, int grid,
                                          const LipschitzRefinement& r) {
    if (!(epsilon > 0 && epsilon <= 1))
        throw std::domain_error("lipschitz epsilon must lie in (0, 1]");
    if (grid < 2) throw std::domain_error("lipschitz grid must have >= 2 points");
    if (r.factor < 2 || r.refinements < 0 || !(r.growth_ratio > 1))
        throw std::domain_error("invalid lipschitz refinement parameters");

    auto estimate = [&](long points) {
        double dx = epsilon / static_cast<double>(points - 1);
        double max_slope = 0;
        double prev = w(0.0);
        for (long i = 1; i < points; ++i) {
            double v = w(epsilon * static_cast<double>(i) / (points - 1));
            max_slope = std::max(max_slope, std::abs(v - prev) / dx);
            prev = v;
        }
        return max_slope;
    };

    long points = grid;
    double first = estimate(points);
    double last = first;
    for (int i = 0; i < r.refinements; ++i) {
        points *= r.factor;
        last = estimate(points);
    }
    // A Lipschitz slope stabilizes under refinement; a singular one keeps
    // climbing as the grid resolves x = 0.
    if (first > 0 && last > r.growth_ratio * first) return std::nullopt;
    return last;
}

double w_hat(const UtilityFunction& w, double tol) {
    if (!(tol > 0)) throw std::domain_error("w_hat tolerance must be positive");
    double w0 = w(0.0);
    QuadratureConfig q;
    q.abs_tol = tol;
    double value = integrate_with_breakpoints(
        [&](double x) { return w0 - w(x); }, 0.0, 1.0, w.interior_breakpoints(), q);
    return value;
}

std::optional<UtilityConstants> bound_constants(const UtilityFunction& w,
                                                  double epsilon, double tol) {
    if (!(epsilon > 0 && epsilon <= 1))
        throw std::domain_error("bound_constants epsilon must lie in (0, 1]");
    // The Lipschitz window must not straddle a jump.
    if (auto disc = w.first_discontinuity(); disc && epsilon >= *disc)
        epsilon = *disc / 2;

    UtilityFunction wn = w.normalized();
    auto lip = lipschitz_near_zero(wn, epsilon);
    if (!lip) return std::nullopt;

    double bound = 0;
    constexpr int kGrid = 1025;
    for (int i = 0; i < kGrid; ++i)
        bound = std::max(bound, -wn(static_cast<double>(i) / (kGrid - 1)));

    return UtilityConstants{*lip, epsilon, bound, w_hat(w, tol)};
}

}  // namespace secretary
