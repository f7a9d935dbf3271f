#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "steklov/equilibria.hpp"
#include "steklov/pde.hpp"

using namespace steklov;

namespace {

// scalar oracle: the amplitude at lambda=0 on branch 1 solves
// arctan(s)/s = sigma_1 with s = (1+e)c
double branch1_amplitude_at_zero_oracle() {
    const double target = steklov_sigma1();
    double a = 1.0, b = 10.0;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        (std::atan(m) / m > target ? a : b) = m;
    }
    return 0.5 * (a + b) / (1.0 + kEuler);
}

}  // namespace

TEST_CASE("lambda(c) closed form and its limits") {
    const auto g = builtin_nonlinearity("arctan");
    const auto b1 = make_branch(1, g);

    const auto limit = lambda_of_amplitude(b1, 0.0);
    CHECK(limit.is_limit);
    CHECK(limit.lambda == doctest::Approx(steklov_sigma1() - 1.0).epsilon(1e-15));

    const auto at1 = lambda_of_amplitude(b1, 1.0);
    CHECK_FALSE(at1.is_limit);
    CHECK(at1.lambda == doctest::Approx(0.110322573904).epsilon(1e-10));

    CHECK(lambda_of_amplitude(b1, 1e9).lambda == doctest::Approx(steklov_sigma1()).epsilon(1e-8));

    const auto neg = make_branch(1, builtin_nonlinearity("neg_arctan"));
    CHECK(lambda_of_amplitude(neg, 0.0).lambda == doctest::Approx(steklov_sigma1() + 1.0).epsilon(1e-15));
}

TEST_CASE("amplitudes at a given lambda") {
    const auto g = builtin_nonlinearity("arctan");
    const auto b1 = make_branch(1, g);

    const auto at0 = amplitudes_at_lambda(b1, 0.0, 1e-6, 1e3);
    REQUIRE(at0.size() == 1);
    CHECK(at0[0] == doctest::Approx(branch1_amplitude_at_zero_oracle()).epsilon(1e-10));
    CHECK(at0[0] == doctest::Approx(0.701).epsilon(1e-3));

    CHECK(amplitudes_at_lambda(b1, steklov_sigma1() + 0.1, 1e-6, 1e3).empty());

    const auto bs = make_branch(1, builtin_nonlinearity("sqrt_sin"));
    const auto many = amplitudes_at_lambda(bs, steklov_sigma1(), 1e-3, 20.0, 20000);
    CHECK(many.size() >= 3);
    // roots of sin((1+e)c) = 0: c = m*pi/(1+e)
    const double period = std::numbers::pi / (1.0 + kEuler);
    for (double c : many) {
        const double m = c / period;
        CHECK(std::abs(m - std::round(m)) <= 1e-6);
    }
}

TEST_CASE("sq_sin_inv branch oscillates across sigma_1 with crossings accumulating at c=0") {
    // lambda(c) = sigma_1 - k c sin(1/(k c)) crosses sigma_1 at c = 1/(k m pi);
    // the sweep resolves a mesh-limited number of them
    const auto b = make_branch(1, builtin_nonlinearity("sq_sin_inv"));
    CHECK(lambda_of_amplitude(b, 0.0).lambda == doctest::Approx(steklov_sigma1()).epsilon(1e-15));
    const auto roots = amplitudes_at_lambda(b, steklov_sigma1(), 1e-4, 0.1, 20000);
    CHECK(roots.size() >= 100);
    const double k = 1.0 + kEuler;
    for (std::size_t i = 0; i < 5; ++i) {
        const double m = 1.0 / (k * roots[i] * std::numbers::pi);
        CHECK(std::abs(m - std::round(m)) <= 1e-6 * m);
    }
}

TEST_CASE("equilibrium profiles and their symmetry") {
    const Grid grid(200);
    CHECK(sup_norm(equilibrium_profile(1, 0.0, grid)) == 0.0);

    // branch 2 vanishes at the midpoint
    const Field u2 = equilibrium_profile(2, 1.0, grid);
    CHECK(u2.values[100] == 0.0);

    const Field u1 = equilibrium_profile(1, 0.37, grid);
    const std::size_t n = u1.size();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(u1[i] - u1[n - 1 - i]) <= 1e-14);
        CHECK(std::abs(u2[i] + u2[n - 1 - i]) <= 1e-14);
    }

    // rescaling by the boundary sup-norm reproduces the boundary
    // eigenfunction exactly (proportionality)
    const auto pairs = steklov_eigenpairs(grid, Normalization::sup_norm);
    for (double c : {1e-2, 1.0, 1e3}) {
        Field r1 = equilibrium_profile(1, c, grid);
        scale(r1, 1.0 / (c * (1.0 + kEuler)));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(r1[i] - pairs[0].profile[i]) <= 1e-14);
    }
}

TEST_CASE("profiles satisfy the nonlinear boundary conditions along the branch") {
    oracles::Rng rng(99);
    const auto g = builtin_nonlinearity("arctan");
    for (int trial = 0; trial < 50; ++trial) {
        const int id = trial % 2 + 1;
        const auto branch = make_branch(id, g);
        const double c = (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * std::exp(rng.uniform(-6.0, 6.0));
        const double lambda = lambda_of_amplitude(branch, c).lambda;
        const double s = branch.scale_factor * c;  // boundary value at x=1
        // u_x(1) = lambda*u(1) + g(u(1)) with u(1) = s and u_x(1) = sigma*s
        const double defect = branch.base_sigma * s - (lambda * s + g.eval(s));
        CHECK(std::abs(defect) <= 1e-10);
    }
}

TEST_CASE("bounded g squeezes the branch against sigma at rate 1/c") {
    const auto g = builtin_nonlinearity("arctan");
    for (int id : {1, 2}) {
        const auto branch = make_branch(id, g);
        for (double c : {1.0, 10.0, 100.0, 1000.0}) {
            const double gap = std::abs(lambda_of_amplitude(branch, c).lambda - branch.base_sigma);
            CHECK(gap <= (std::numbers::pi / 2.0) / (branch.scale_factor * c));
        }
    }
}

TEST_CASE("pitchfork locations agree with the spectrum's zero crossing") {
    const Grid grid(200);
    const auto g = builtin_nonlinearity("arctan");
    // bisection on the relevant eigenvalue of the linearization at zero
    const auto crossing = [&](int which, double lo, double hi) {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const auto spec = linearized_spectrum_at_zero(mid, g, which, grid);
            (spec.eigenvalues[which - 1] < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double star1 = crossing(1, -0.8, -0.3);
    const double star2 = crossing(2, 1.05, 1.4);
    CHECK(std::abs(star1 - lambda_of_amplitude(make_branch(1, g), 0.0).lambda) <= 1e-8);
    CHECK(std::abs(star2 - lambda_of_amplitude(make_branch(2, g), 0.0).lambda) <= 1e-8);
}

TEST_CASE("bifurcation diagram sweep") {
    const auto g = builtin_nonlinearity("arctan");
    DiagramOptions opts;
    opts.c_min = 1e-3;
    opts.c_max = 1e3;
    opts.steps = 40;
    opts.grid_cells = 200;

    const auto points = bifurcation_diagram(g, {1}, opts);
    // lambda increases strictly from sigma*_1 toward sigma_1 with |c|
    double prev = -1e300;
    int positive_rows = 0;
    for (const auto& p : points) {
        if (p.amplitude <= 0.0) continue;
        ++positive_rows;
        CHECK(p.lambda > prev);
        CHECK(p.lambda > steklov_sigma1() - 1.0);
        CHECK(p.lambda < steklov_sigma1());
        if (p.stability != BifurcationPoint::Stability::unknown)
            CHECK(p.stability == BifurcationPoint::Stability::stable);
        prev = p.lambda;
    }
    CHECK(positive_rows == opts.steps);

    const auto neg = bifurcation_diagram(builtin_nonlinearity("neg_arctan"), {1}, opts);
    prev = 1e300;
    for (const auto& p : neg) {
        if (p.amplitude <= 0.0) continue;
        CHECK(p.lambda < prev);
        CHECK(p.lambda > steklov_sigma1());
        CHECK(p.lambda < steklov_sigma1() + 1.0);
        prev = p.lambda;
    }

    // saddle column on branch 2
    DiagramOptions opts2 = opts;
    opts2.steps = 12;
    opts2.c_min = 0.2;
    opts2.c_max = 3.0;
    const auto b2 = bifurcation_diagram(g, {2}, opts2);
    int saddles = 0;
    for (const auto& p : b2)
        if (p.stability == BifurcationPoint::Stability::saddle) {
            CHECK(p.morse == 1);
            ++saddles;
        }
    CHECK(saddles > 0);
}
