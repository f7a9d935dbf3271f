#include "steklov/steklov_problem.hpp"

namespace steklov {

std::array<SteklovPair, 2> steklov_eigenpairs(const Grid& grid, Normalization normalization) {
    if (grid.n_nodes() < 2) throw std::invalid_argument("grid needs at least 2 nodes");

    // F1 symmetric, F2 antisymmetric about x=1/2; evaluate in the form that
    // makes the symmetry explicit, then pick the normalizing constant.
    Field phi1 = sample(grid, [](double x) { return std::exp(x) + std::exp(1.0 - x); });
    Field phi2 = sample(grid, [](double x) { return std::exp(x) - std::exp(1.0 - x); });
    enforce_parity(phi1);
    enforce_parity(phi2);

    if (normalization == Normalization::sup_norm) {
        // Boundary values carry the sup: |F1| peaks at the endpoints and so
        // does |F2|. Signs fixed so F1 > 0 and F2(1) = +1.
        for (double& v : phi1.values) v /= 1.0 + kEuler;
        for (double& v : phi2.values) v /= kEuler - 1.0;
    } else {
        scale(phi1, 1.0 / l2_norm(grid, phi1));
        scale(phi2, 1.0 / l2_norm(grid, phi2));
    }

    SteklovPair p1{steklov_sigma1(), std::move(phi1), normalization, 1};
    SteklovPair p2{steklov_sigma2(), std::move(phi2), normalization, 2};
    return {std::move(p1), std::move(p2)};
}

ResidualPair steklov_residual(const SteklovPair& pair, const Grid& grid) {
    const Field& u = pair.profile;
    if (static_cast<int>(u.size()) != grid.n_nodes())
        throw std::invalid_argument("profile does not match grid");
    if (u.size() < 4) throw std::invalid_argument("residual needs at least 4 nodes");
    const double h = grid.h;
    const std::size_t n = u.size();

    ResidualPair r;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double uxx = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
        r.interior = std::max(r.interior, std::abs(uxx - u[i]));
    }
    const double ux0 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    const double ux1 = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
    r.boundary = std::max(std::abs(-ux0 - pair.sigma * u[0]), std::abs(ux1 - pair.sigma * u[n - 1]));
    return r;
}

}  // namespace steklov
