#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAsymptoteGuard = 1e-6;  // never evaluate closer to a singularity
constexpr double kDegenerateTol = 1e-9;   // |gamma| or |gamma-2| below this -> mu=-1

double bisect(const std::function<double(double)>& f, double a, double b, double fa) {
    // plain bisection to machine precision; fa = f(a)
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

// mu > -1 family, s = sqrt(1+mu): e^s(s-gamma) = +(s+gamma)  [symmetric mode]
//                                 e^s(s-gamma) = -(s+gamma)  [antisymmetric mode]
// For gamma <= 0 neither branch has a positive root; for 0 < gamma <= 2 only
// the symmetric branch does (one root, s > gamma); for gamma > 2 the
// antisymmetric branch gains one root in (0, gamma).
struct ExpRoot {
    double s;
    EigenFamily family;
};

std::vector<ExpRoot> exp_family_roots(double gamma) {
    std::vector<ExpRoot> roots;
    if (gamma <= kDegenerateTol) return roots;

    const auto f_sym = [gamma](double s) { return std::exp(s) * (s - gamma) - (s + gamma); };
    {
        // f_sym(gamma) = -2 gamma < 0 and f_sym is eventually positive, with
        // a single root in (gamma, inf).
        double lo = gamma;
        double hi = gamma + 1.0;
        while (f_sym(hi) < 0.0) hi += 1.0;
        roots.push_back({bisect(f_sym, lo, hi, -2.0 * gamma), EigenFamily::exp_symmetric});
    }
    if (gamma > 2.0 + kDegenerateTol) {
        const auto f_anti = [gamma](double s) { return std::exp(s) * (gamma - s) - (s + gamma); };
        // f_anti(0)=0 with positive slope for gamma>2, f_anti(gamma)<0: scan
        // geometrically from the origin for the sign change.
        double lo = kAsymptoteGuard;
        double hi = gamma - kAsymptoteGuard;
        double prev = lo, fprev = f_anti(lo);
        const int steps = 4000;
        for (int i = 1; i <= steps; ++i) {
            const double s = lo + (hi - lo) * i / steps;
            const double fs = f_anti(s);
            if ((fprev > 0.0) != (fs > 0.0)) {
                roots.push_back({bisect(f_anti, prev, s, fprev), EigenFamily::exp_antisym});
                break;
            }
            prev = s;
            fprev = fs;
        }
    }
    return roots;
}

// mu < -1 family: G(s) = tan(s) - 2 gamma s / (gamma^2 - s^2) on intervals
// between the tan asymptotes (2k+1)pi/2 and the rational asymptote |gamma|.
double trig_G(double s, double gamma) {
    return std::tan(s) - 2.0 * gamma * s / (gamma * gamma - s * s);
}

// Collects trig-family roots in ascending s until `needed` of them are found.
// Throws when a root would be under-resolved on the grid (s > s_grid_limit)
// or when brackets collapse at a resonance |gamma| ~ (2k+1)pi/2.
std::vector<double> trig_family_roots(double gamma, int needed, double s_grid_limit) {
    std::vector<double> roots;
    if (needed <= 0) return roots;

    const double r = std::abs(gamma);
    const bool has_rational = r > kDegenerateTol;

    // interval boundaries: 0, the tan asymptotes, and |gamma| slotted in
    double left = 0.0;
    int k = 0;  // next tan asymptote index
    bool rational_pending = has_rational;
    while (static_cast<int>(roots.size()) < needed) {
        double t_k = (k + 0.5) * kPi;
        double right;
        if (rational_pending && r < t_k) {
            right = r;
            rational_pending = false;
        } else {
            right = t_k;
            ++k;
        }
        if (right - left < 3.0 * kAsymptoteGuard) {
            std::ostringstream msg;
            msg << "root bracketing failed: interval (" << left << ", " << right
                << ") collapsed near a resonance of gamma=" << gamma;
            throw std::runtime_error(msg.str());
        }

        const double a = left + kAsymptoteGuard;
        const double b = right - kAsymptoteGuard;
        if (b > a) {
            // scan grid: uniform interior points plus geometric refinement
            // toward both singular endpoints
            std::vector<double> pts;
            for (double d = (b - a) * 0.25; d > kAsymptoteGuard; d *= 0.5) pts.push_back(a + d);
            for (double d = (b - a) * 0.25; d > kAsymptoteGuard; d *= 0.5) pts.push_back(b - d);
            const int m = std::max(64, static_cast<int>((b - a) / 1e-3));
            for (int i = 0; i <= m; ++i) pts.push_back(a + (b - a) * i / m);
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

            double prev = pts.front();
            double fprev = trig_G(prev, gamma);
            for (std::size_t i = 1; i < pts.size(); ++i) {
                const double s = pts[i];
                const double fs = trig_G(s, gamma);
                if (std::isfinite(fprev) && std::isfinite(fs) && (fprev > 0.0) != (fs > 0.0)) {
                    const double root =
                        bisect([gamma](double x) { return trig_G(x, gamma); }, prev, s, fprev);
                    if (root > s_grid_limit) throw std::runtime_error("grid too coarse");
                    roots.push_back(root);
                    if (static_cast<int>(roots.size()) >= needed) return roots;
                }
                prev = s;
                fprev = fs;
            }
        }
        left = right;
        if (left > s_grid_limit + kPi) throw std::runtime_error("grid too coarse");
    }
    return roots;
}

Field build_eigenfunction(EigenFamily family, double s, double gamma, const Grid& grid) {
    Field phi;
    switch (family) {
        case EigenFamily::exp_symmetric:
            phi = sample(grid, [s](double x) { return std::exp(s * x) + std::exp(s * (1.0 - x)); });
            break;
        case EigenFamily::exp_antisym:
            phi = sample(grid, [s](double x) { return std::exp(s * x) - std::exp(s * (1.0 - x)); });
            break;
        case EigenFamily::affine:
            if (std::abs(gamma) <= kDegenerateTol)
                phi = sample(grid, [](double) { return 1.0; });
            else
                phi = sample(grid, [](double x) { return 1.0 - 2.0 * x; });
            break;
        case EigenFamily::trig:
            phi = sample(grid, [s, gamma](double x) { return s * std::cos(s * x) - gamma * std::sin(s * x); });
            break;
    }
    enforce_parity(phi);
    return phi;
}

}  // namespace

RobinSpectrum solve_spectrum(double gamma, int n_max, const Grid& grid) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (grid.n_cells < 32) throw std::invalid_argument("grid must have at least 32 cells");

    struct Mode {
        double mu;
        double s;
        EigenFamily family;
    };
    std::vector<Mode> modes;

    for (const ExpRoot& root : exp_family_roots(gamma))
        modes.push_back({root.s * root.s - 1.0, root.s, root.family});

    const bool degenerate = std::abs(gamma) <= kDegenerateTol || std::abs(gamma - 2.0) <= kDegenerateTol;
    if (degenerate) modes.push_back({-1.0, 0.0, EigenFamily::affine});

    const double s_grid_limit = kPi * grid.n_cells / 8.0;  // >= 8 nodes per half-wave
    const int trig_needed = n_max - static_cast<int>(modes.size());
    for (double s : trig_family_roots(gamma, trig_needed, s_grid_limit))
        modes.push_back({-1.0 - s * s, s, EigenFamily::trig});

    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.mu > b.mu; });
    if (degenerate) {
        // drop near-duplicates of the exact mu=-1 mode
        modes.erase(std::remove_if(modes.begin(), modes.end(),
                                   [](const Mode& m) {
                                       return m.family != EigenFamily::affine && std::abs(m.mu + 1.0) < 1e-8;
                                   }),
                    modes.end());
    }
    if (static_cast<int>(modes.size()) < n_max) throw std::runtime_error("grid too coarse");
    modes.resize(static_cast<std::size_t>(n_max));

    RobinSpectrum spec;
    spec.gamma = gamma;
    spec.n_max = n_max;
    spec.grid = grid;
    for (const Mode& m : modes) {
        spec.eigenvalues.push_back(m.mu);
        spec.families.push_back(m.family);
        spec.eigenfunctions.push_back(build_eigenfunction(m.family, m.s, gamma, grid));
    }

    // Orthonormalize in the trapezoid inner product (modified Gram-Schmidt,
    // two passes). The corrections are O(h^2) quadrature defects, well below
    // the discretization error of the profiles themselves.
    for (std::size_t i = 0; i < spec.eigenfunctions.size(); ++i) {
        Field& phi = spec.eigenfunctions[i];
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < i; ++j)
                add_scaled(phi, -trap_dot(grid, phi, spec.eigenfunctions[j]), spec.eigenfunctions[j]);
        scale(phi, 1.0 / l2_norm(grid, phi));
        enforce_parity(phi);
        const double at0 = phi.values.front();
        if (at0 < 0.0 || (at0 == 0.0 && phi.values[1] < phi.values[0])) scale(phi, -1.0);
    }
    return spec;
}

RobinSpectrum spectrum_at_infinity(double lambda, int n_max, const Grid& grid) {
    return solve_spectrum(lambda, n_max, grid);
}

RobinSpectrum linearized_spectrum_at_zero(double lambda, const BoundaryNonlinearity& g, int n_max,
                                          const Grid& grid) {
    return solve_spectrum(lambda + g.deriv(0.0), n_max, grid);
}

RobinSpectrum linearized_spectrum_at(const Field& u_star, double lambda, const BoundaryNonlinearity& g,
                                     int n_max, const Grid& grid) {
    const double d0 = g.deriv(u_star.values.front());
    const double d1 = g.deriv(u_star.values.back());
    if (std::abs(d0 - d1) > 1e-10) throw std::invalid_argument("asymmetric Robin coefficients unsupported");
    return solve_spectrum(lambda + d0, n_max, grid);
}

int morse_index(const RobinSpectrum& spec) {
    int count = 0;
    for (double mu : spec.eigenvalues) {
        if (std::abs(mu) < 1e-8) throw std::runtime_error("non-hyperbolic at this lambda");
        if (mu > 0.0) ++count;
    }
    return count;
}

double robin_bc_residual(double mu, double gamma) {
    if (std::abs(mu + 1.0) < 1e-12) {
        // affine modes: gamma=0 gives phi=1, gamma=2 gives phi=1-2x
        if (std::abs(gamma) <= kDegenerateTol) return std::abs(gamma);
        return std::abs(-2.0 - gamma * (1.0 - 2.0));
    }
    if (mu > -1.0) {
        const double s = std::sqrt(1.0 + mu);
        // phi = e^{sx} +- e^{s(1-x)}; pick the branch with the smaller defect
        // (the root determines it, but the caller only hands us mu).
        const double es = std::exp(s);
        const double scale = std::max(1.0, es);
        const double plus = std::abs((s * es - s) - gamma * (es + 1.0)) / scale;
        const double minus = std::abs((s * es + s) - gamma * (es - 1.0)) / scale;
        return std::min(plus, minus);
    }
    const double s = std::sqrt(-(1.0 + mu));
    // phi = s cos(sx) - gamma sin(sx); defect of phi'(1) = gamma phi(1)
    const double phi1 = s * std::cos(s) - gamma * std::sin(s);
    const double dphi1 = -s * s * std::sin(s) - gamma * s * std::cos(s);
    return std::abs(dphi1 - gamma * phi1) / std::max(1.0, s * s);
}

}  // namespace steklov
