#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace steklov {

/// Boundary nonlinearity g together with its derivative and the hypothesis
/// flags the theory branches on. Immutable after construction; safe to share
/// across threads.
struct BoundaryNonlinearity {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    /// sup |g|; +infinity when unbounded.
    double bound = std::numeric_limits<double>::infinity();
    struct Flags {
        bool odd = false;
        bool monotone = false;
        bool bounded = false;
        bool lipschitz = false;
    } flags;
    double deriv_at_zero = 0.0;
    /// Antiderivative of g with primitive(0)=0; empty means "integrate eval
    /// numerically" (adaptive Simpson).
    std::function<double(double)> antiderivative;

    /// integral of g over [0,u], using the closed form when available.
    double primitive(double u) const;
};

/// Builtins: arctan, neg_arctan, sqrt_sin, sq_sin_inv.
/// Throws std::invalid_argument("unknown nonlinearity") otherwise.
BoundaryNonlinearity builtin_nonlinearity(const std::string& name);

struct HypothesisCheck {
    std::string hypothesis;  // odd | monotone | bounded | g(0)=0 | g'(0)=1
    bool declared;           // what the flags / record promise
    bool passed;             // what the samples show
    std::string detail;
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Checks the standing hypotheses over a sample set. Failures are reported,
/// never thrown; a declared flag that fails the empirical check is flagged in
/// the report.
HypothesisReport validate_hypotheses(const BoundaryNonlinearity& g, const std::vector<double>& samples);

/// Adaptive Simpson quadrature of f over [a,b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace steklov
