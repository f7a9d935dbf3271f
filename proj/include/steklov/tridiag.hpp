#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace steklov {

/// Tridiagonal system storage: sub[i] couples row i to i-1 (sub[0] unused),
/// sup[i] couples row i to i+1 (sup[n-1] unused).
struct Tridiag {
    std::vector<double> sub, diag, sup;

    std::size_t size() const { return diag.size(); }
};

/// Solves T x = b by elimination from both ends toward the center.
///
/// For a persymmetric T (sub[i] == sup[n-1-i], diag[i] == diag[n-1-i]) every
/// floating-point operation on the upper half mirrors one on the lower half,
/// so reversing b reverses x bit-exactly. The time steppers rely on this to
/// keep even/odd data in their symmetry class over long runs. Cost matches a
/// one-directional sweep.
inline std::vector<double> solve_tridiag(const Tridiag& t, const std::vector<double>& b) {
    const std::size_t n = t.size();
    if (b.size() != n) throw std::invalid_argument("tridiag rhs size mismatch");
    if (n == 0) return {};
    std::vector<double> d = t.diag, r = b, x(n);
    if (n == 1) {
        x[0] = r[0] / d[0];
        return x;
    }

    // lo..lm eliminated downward, hm..hi eliminated upward
    const std::size_t lm = (n - 1) / 2;  // last row reached from the left
    const std::size_t hm = n / 2;        // last row reached from the right

    for (std::size_t i = 1; i <= lm; ++i) {
        const double f = t.sub[i] / d[i - 1];
        d[i] -= f * t.sup[i - 1];
        r[i] -= f * r[i - 1];
    }
    if (n >= 2 && n - 2 >= hm) {
        for (std::size_t j = n - 2;; --j) {
            const double f = t.sup[j] / d[j + 1];
            d[j] -= f * t.sub[j + 1];
            r[j] -= f * r[j + 1];
            if (j == hm) break;
        }
    }

    if (lm == hm) {
        // Odd row count. Both sweeps above touched the center row in sequence,
        // which is order-dependent; rebuild it with the two one-sided fills
        // summed before subtracting, so the expression is invariant under
        // exchanging the sides.
        const std::size_t m = lm;
        double dl = t.diag[m], rl = b[m];
        const double fl = t.sub[m] / d[m - 1];
        const double fr = t.sup[m] / d[m + 1];
        dl -= (fl * t.sup[m - 1] + fr * t.sub[m + 1]);
        rl -= (fl * r[m - 1] + fr * r[m + 1]);
        x[m] = rl / dl;
    } else {
        // even row count: central 2x2 block [d[lm] sup ; sub d[hm]]
        const double a = d[lm], bb = t.sup[lm], c = t.sub[hm], dd = d[hm];
        const double det = a * dd - bb * c;
        x[lm] = (r[lm] * dd - bb * r[hm]) / det;
        x[hm] = (r[hm] * a - c * r[lm]) / det;
    }

    for (std::size_t i = lm;; --i) {
        if (i == 0) break;
        const std::size_t k = i - 1;
        x[k] = (r[k] - t.sup[k] * x[k + 1]) / d[k];
    }
    for (std::size_t j = hm + 1; j < n; ++j) {
        x[j] = (r[j] - t.sub[j] * x[j - 1]) / d[j];
    }
    return x;
}

}  // namespace steklov
