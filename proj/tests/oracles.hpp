#pragma once

// Test-only oracles, independent of the library's root-finding paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

/// Deterministic uniform double in [lo, hi) from a splitmix-style generator;
/// avoids std::uniform_real_distribution's implementation-defined stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    double uniform(double lo, double hi) {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::uint64_t state_;
};

inline double refine_bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// Brute-force spectrum of phi_xx - phi = mu phi, -phi_x(0)=gamma phi(0),
/// phi_x(1)=gamma phi(1): dense sign-change scan with step `step` in
/// s over (0, s_max) for both closed-form families, skipping neighborhoods
/// of width `guard` around the asymptotes (2k+1)pi/2 and |gamma|.
/// Returns eigenvalues sorted descending. Scan hits are sharpened by local
/// bisection inside the detected 1-step bracket.
inline std::vector<double> dense_scan_spectrum(double gamma, double s_max = 40.0, double step = 1e-4,
                                               double guard = 1e-3) {
    std::vector<double> mus;

    // mu > -1 family: e^s(s-gamma) -+ (s+gamma); smooth, no exclusions.
    // The antisymmetric branch vanishes at s=0 for every gamma, so start
    // clear of the origin.
    for (int branch = 0; branch < 2; ++branch) {
        const double sign = branch == 0 ? -1.0 : 1.0;
        const auto f = [gamma, sign](double s) { return std::exp(s) * (s - gamma) + sign * (s + gamma); };
        double prev = step, fprev = f(prev);
        for (double s = 2 * step; s <= s_max; s += step) {
            const double fs = f(s);
            if ((fprev < 0.0) != (fs < 0.0)) {
                const double root = refine_bisect(f, prev, s);
                mus.push_back(root * root - 1.0);
            }
            prev = s;
            fprev = fs;
        }
    }

    // mu < -1 family: tan(s) = 2 gamma s / (gamma^2 - s^2)
    const double pi = std::numbers::pi;
    const auto near_asymptote = [&](double s) {
        const double m = std::round((s - 0.5 * pi) / pi);
        if (std::abs(s - (0.5 * pi + m * pi)) < guard) return true;  // (2k+1)pi/2
        if (std::abs(s - std::abs(gamma)) < guard) return true;
        return false;
    };
    const auto asymptote_between = [&](double a, double b) {
        const double r = std::abs(gamma);
        if (a < r && r < b) return true;
        const int ka = static_cast<int>(std::floor((a - 0.5 * pi) / pi));
        const int kb = static_cast<int>(std::floor((b - 0.5 * pi) / pi));
        return ka != kb;
    };
    const auto G = [gamma](double s) { return std::tan(s) - 2.0 * gamma * s / (gamma * gamma - s * s); };
    double prev = 0.0, fprev = 0.0;
    bool have_prev = false;
    for (double s = step; s <= s_max; s += step) {
        if (near_asymptote(s)) {
            have_prev = false;
            continue;
        }
        const double fs = G(s);
        if (have_prev && (fprev < 0.0) != (fs < 0.0) && !asymptote_between(prev, s)) {
            const double root = refine_bisect(G, prev, s);
            mus.push_back(-1.0 - root * root);
        }
        prev = s;
        fprev = fs;
        have_prev = true;
    }

    std::sort(mus.begin(), mus.end(), [](double a, double b) { return a > b; });
    return mus;
}

}  // namespace oracles
