#include "steklov/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace steklov {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

double BoundaryNonlinearity::primitive(double u) const {
    if (antiderivative) return antiderivative(u);
    return adaptive_simpson(eval, 0.0, u);
}

namespace {

// The symmetry-protection guarantees downstream need g(-u) == -g(u) and
// g'(-u) == g'(u) bitwise, not just mathematically; evaluate the u >= 0
// branch and reflect.
std::function<double(double)> odd(double (*f)(double)) {
    return [f](double u) { return u < 0.0 ? -f(-u) : f(u); };
}
std::function<double(double)> even(double (*f)(double)) {
    return [f](double u) { return f(std::abs(u)); };
}

}  // namespace

BoundaryNonlinearity builtin_nonlinearity(const std::string& name) {
    BoundaryNonlinearity g;
    g.name = name;
    if (name == "arctan") {
        g.eval = odd([](double v) { return std::atan(v); });
        g.deriv = even([](double v) { return 1.0 / (1.0 + v * v); });
        g.bound = std::numbers::pi / 2.0;
        g.flags = {true, true, true, true};
        g.deriv_at_zero = 1.0;
        g.antiderivative = even([](double v) { return v * std::atan(v) - 0.5 * std::log1p(v * v); });
    } else if (name == "neg_arctan") {
        g.eval = odd([](double v) { return -std::atan(v); });
        g.deriv = even([](double v) { return -1.0 / (1.0 + v * v); });
        g.bound = std::numbers::pi / 2.0;
        g.flags = {true, true, true, true};
        g.deriv_at_zero = -1.0;
        g.antiderivative = even([](double v) { return -(v * std::atan(v) - 0.5 * std::log1p(v * v)); });
    } else if (name == "sqrt_sin") {
        g.eval = odd([](double v) { return std::sqrt(v) * std::sin(v); });
        g.deriv = even([](double v) {
            if (v == 0.0) return 0.0;
            const double r = std::sqrt(v);
            return std::sin(v) / (2.0 * r) + r * std::cos(v);
        });
        g.bound = std::numeric_limits<double>::infinity();
        g.flags = {true, false, false, false};
        g.deriv_at_zero = 0.0;
    } else if (name == "sq_sin_inv") {
        // u^2 sin(1/u), extended continuously by 0 at u=0; the difference
        // quotient limit fixes the derivative there to 0.
        g.eval = odd([](double v) { return v == 0.0 ? 0.0 : v * v * std::sin(1.0 / v); });
        g.deriv = even([](double v) {
            if (v == 0.0) return 0.0;
            return 2.0 * v * std::sin(1.0 / v) - std::cos(1.0 / v);
        });
        g.bound = std::numeric_limits<double>::infinity();
        g.flags = {true, false, false, false};
        g.deriv_at_zero = 0.0;
    } else {
        throw std::invalid_argument("unknown nonlinearity");
    }
    return g;
}

HypothesisReport validate_hypotheses(const BoundaryNonlinearity& g, const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("hypothesis check needs samples");
    HypothesisReport report;

    double odd_defect = 0.0;
    for (double u : samples) odd_defect = std::max(odd_defect, std::abs(g.eval(u) + g.eval(-u)));
    report.checks.push_back({"odd", g.flags.odd, odd_defect <= 1e-12,
                             "max |g(u)+g(-u)| = " + std::to_string(odd_defect)});

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    bool nondecreasing = true, nonincreasing = true;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const double a = g.eval(sorted[i]), b = g.eval(sorted[i + 1]);
        if (b < a - 1e-14) nondecreasing = false;
        if (b > a + 1e-14) nonincreasing = false;
    }
    report.checks.push_back({"monotone", g.flags.monotone, nondecreasing || nonincreasing,
                             nondecreasing ? "nondecreasing" : (nonincreasing ? "nonincreasing" : "not monotone")});

    double sup = 0.0;
    for (double u : samples) sup = std::max(sup, std::abs(g.eval(u)));
    const bool bounded_ok = std::isfinite(g.bound) && sup <= g.bound * (1.0 + 1e-12);
    report.checks.push_back({"bounded", g.flags.bounded, bounded_ok,
                             "sup over samples = " + std::to_string(sup)});

    const double g0 = g.eval(0.0);
    report.checks.push_back({"g(0)=0", true, std::abs(g0) <= 1e-14, "g(0) = " + std::to_string(g0)});

    const double gp0 = g.deriv(0.0);
    report.checks.push_back({"g'(0)=1", true, std::abs(gp0 - 1.0) <= 1e-12, "g'(0) = " + std::to_string(gp0)});

    return report;
}

}  // namespace steklov
