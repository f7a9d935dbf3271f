#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "steklov/compactification.hpp"
#include "steklov/steklov_problem.hpp"

using namespace steklov;

namespace {
const Grid grid200(200);
const BoundaryNonlinearity g_arctan = builtin_nonlinearity("arctan");

Field unit(Field f, const Grid& grid) {
    scale(f, 1.0 / l2_norm(grid, f));
    return f;
}
}  // namespace

TEST_CASE("projection geometry") {
    const Field zero(static_cast<std::size_t>(grid200.n_nodes()), 0.0);
    const auto north = project(zero, grid200);
    CHECK(north.z == 1.0);
    CHECK(sup_norm(north.U) == 0.0);

    Field u = unit(sample(grid200, [](double x) { return 1.0 + x; }), grid200);
    auto p = project(u, grid200);
    CHECK(p.z == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    scale(u, 1e3);
    p = project(u, grid200);
    CHECK(p.z == doctest::Approx(1e-3).epsilon(1e-6));
    CHECK(l2_norm(grid200, p.U) == doctest::Approx(1.0).epsilon(1e-6));

    // round trip through a nontrivial field
    const Field v = sample(grid200, [](double x) { return std::exp(x) + std::exp(1.0 - x); });
    CHECK(l2_distance(grid200, unproject(project(v, grid200), grid200), v) <= 1e-10);

    HemispherePoint at_infinity{unit(v, grid200), 0.0};
    CHECK_THROWS_WITH(static_cast<void>(unproject(at_infinity, grid200)), "point at infinity has no preimage");
}

TEST_CASE("north pole is a rest point and z = 0 is invariant") {
    CompactOptions opts;
    opts.t_end = 2.0;
    const Field zero(static_cast<std::size_t>(grid200.n_nodes()), 0.0);
    const auto rest = hemisphere_simulate({zero, 1.0}, 0.0, g_arctan, grid200, opts);
    CHECK(sup_norm(rest.states.back()) <= 1e-10);
    CHECK(rest.z.back() == doctest::Approx(1.0).epsilon(1e-12));

    const auto basis = spectrum_at_infinity(3.0, 2, grid200);
    HemispherePoint p0{basis.eigenfunctions[0], 0.0};
    const auto traj = hemisphere_simulate(p0, 3.0, g_arctan, grid200, opts);
    for (double z : traj.z) CHECK(z == 0.0);
}

TEST_CASE("hemisphere constraint is renormalized and the drift is O(dt^2)") {
    Field u0(static_cast<std::size_t>(grid200.n_nodes()), 0.0);
    add_scaled(u0, 0.5, spectrum_at_infinity(1.0, 1, grid200).eigenfunctions[0]);

    CompactOptions opts;
    opts.t_end = 5.0;
    double drifts[2];
    int idx = 0;
    for (double dt : {1e-3, 5e-4}) {
        opts.dt = dt;
        const auto traj = hemisphere_simulate(project(u0, grid200), 1.0, g_arctan, grid200, opts);
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            CHECK(std::abs(l2_norm_sq(grid200, traj.states[i]) + traj.z[i] * traj.z[i] - 1.0) <= 1e-8);
        drifts[idx++] = traj.max_drift;
    }
    CHECK(drifts[0] / drifts[1] == doctest::Approx(4.0).epsilon(0.5));
}

TEST_CASE("hemisphere trajectory of a blow-up run approaches the equator equilibrium") {
    // start from the projection of a moderately grown state of the lambda=1 run
    const auto basis = spectrum_at_infinity(1.0, 2, grid200);
    Field u0(static_cast<std::size_t>(grid200.n_nodes()), 0.0);
    add_scaled(u0, 0.5, basis.eigenfunctions[0]);
    add_scaled(u0, 0.1, basis.eigenfunctions[1]);

    CompactOptions opts;
    opts.t_end = 100.0;
    const auto traj = hemisphere_simulate(project(u0, grid200), 1.0, g_arctan, grid200, opts);
    CHECK(traj.z.back() <= 1e-2);
    CHECK(l2_distance(grid200, traj.states.back(), basis.eigenfunctions[0]) <= 1e-2);
}

TEST_CASE("hemisphere flow agrees with the projected full dynamics") {
    // the induced flow is a homothety of the original vector field, so
    // projecting a full-problem trajectory must reproduce the hemisphere
    // trajectory up to time-discretization error
    const auto basis = spectrum_at_infinity(1.0, 2, grid200);
    Field u0(static_cast<std::size_t>(grid200.n_nodes()), 0.0);
    add_scaled(u0, 0.5, basis.eigenfunctions[0]);
    add_scaled(u0, 0.1, basis.eigenfunctions[1]);

    SimulateOptions sopts;
    sopts.t_end = 2.0;
    sopts.dt = 1e-4;
    sopts.stop_when_steady = false;
    const auto full = simulate(u0, 1.0, g_arctan, grid200, sopts);
    const auto projected = project(full.final_state, grid200);

    CompactOptions copts;
    copts.t_end = 2.0;
    copts.dt = 1e-4;
    const auto hemi = hemisphere_simulate(project(u0, grid200), 1.0, g_arctan, grid200, copts);

    CHECK(std::abs(hemi.z.back() - projected.z) <= 1e-3 * projected.z);
    CHECK(l2_distance(grid200, hemi.states.back(), projected.U) <= 1e-3);
}

TEST_CASE("eigenfunctions are equilibria of the flow at infinity") {
    CompactOptions opts;
    opts.t_end = 8.0;
    opts.sample_interval = 1.0;
    for (double lambda : {1.0, 3.0}) {
        const auto basis = spectrum_at_infinity(lambda, 2, grid200);
        for (int n : {1, 2}) {
            const auto traj =
                infinity_flow_simulate(basis.eigenfunctions[static_cast<std::size_t>(n - 1)], lambda,
                                       grid200, opts);
            // settles onto the nearby discrete equilibrium, then parks
            const std::size_t m = traj.states.size();
            CHECK(l2_distance(grid200, traj.states[m - 1], traj.states[m - 2]) <= 1e-8);
            CHECK(l2_distance(grid200, traj.states.back(),
                              basis.eigenfunctions[static_cast<std::size_t>(n - 1)]) <= 1e-3);
        }
    }
}

TEST_CASE("Steklov eigenfunctions are equilibria at infinity at sigma_1, sigma_2") {
    const auto pairs = steklov_eigenpairs(grid200, Normalization::l2_norm);
    CHECK(infinity_equilibrium_residual(pairs[0].profile, steklov_sigma1(), grid200) <=
          30.0 * grid200.h * grid200.h);
    CHECK(infinity_equilibrium_residual(pairs[1].profile, steklov_sigma2(), grid200) <=
          30.0 * grid200.h * grid200.h);
}

TEST_CASE("equilibrium residual at infinity: second order, and O(1) for mixtures") {
    double res[3];
    int idx = 0;
    for (int n : {100, 200, 400}) {
        const Grid grid(n);
        const auto basis = spectrum_at_infinity(1.0, 2, grid);
        res[idx++] = infinity_equilibrium_residual(basis.eigenfunctions[0], 1.0, grid);
    }
    CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.3));
    CHECK(res[1] / res[2] == doctest::Approx(4.0).epsilon(0.3));

    const auto basis = spectrum_at_infinity(1.0, 2, grid200);
    Field mix = basis.eigenfunctions[0];
    add_scaled(mix, 1.0, basis.eigenfunctions[1]);
    mix = unit(std::move(mix), grid200);
    CHECK(infinity_equilibrium_residual(mix, 1.0, grid200) > 0.1);
}

TEST_CASE("lambda = 3 heteroclinic at infinity reaches phi_1") {
    const auto basis = spectrum_at_infinity(3.0, 2, grid200);
    Field U0 = basis.eigenfunctions[1];
    add_scaled(U0, 0.01, basis.eigenfunctions[0]);
    U0 = unit(std::move(U0), grid200);

    CompactOptions opts;
    opts.t_end = 50.0;
    const auto traj = infinity_flow_simulate(U0, 3.0, grid200, opts);
    CHECK(l2_distance(grid200, traj.states.back(), basis.eigenfunctions[0]) <= 1e-3);

    // U_1/U_2 increases monotonically once U_1 is above noise
    double prev_ratio = 0.0;
    for (const auto& U : traj.states) {
        const auto c = modal_coefficients(U, basis);
        if (std::abs(c[0]) < 1e-8 || std::abs(c[1]) < 1e-12) continue;
        const double ratio = c[0] / c[1];
        CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
    }
}

TEST_CASE("discrete inner-product identity for Robin-compatible fields") {
    // random combinations of the gamma = lambda eigenbasis satisfy the
    // linear Robin conditions; the two evaluations of <U_xx - U, U> must
    // agree (the ghost-node operator satisfies summation by parts exactly)
    oracles::Rng rng(31);
    const double lambda = 0.8;
    const auto basis = spectrum_at_infinity(lambda, 5, grid200);
    for (int trial = 0; trial < 50; ++trial) {
        Field U(static_cast<std::size_t>(grid200.n_nodes()), 0.0);
        for (const auto& phi : basis.eigenfunctions) add_scaled(U, rng.uniform(-1.0, 1.0), phi);

        // direct: <A U, U> with ghost values from the linear Robin flux
        const double h = grid200.h;
        Field au(U.size());
        au.values[0] = 2.0 / (h * h) * (U.values[1] - U.values[0]) + (2.0 * lambda / h) * U.values[0] -
                       U.values[0];
        for (std::size_t i = 1; i + 1 < U.size(); ++i)
            au.values[i] = (U.values[i - 1] - 2.0 * U.values[i] + U.values[i + 1]) / (h * h) - U.values[i];
        au.values[U.size() - 1] = 2.0 / (h * h) * (U.values[U.size() - 2] - U.values[U.size() - 1]) +
                                  (2.0 * lambda / h) * U.values[U.size() - 1] - U.values[U.size() - 1];
        const double direct = trap_dot(grid200, au, U);

        const double via_identity =
            lambda * (U.values.front() * U.values.front() + U.values.back() * U.values.back()) -
            (h1_seminorm_sq(grid200, U) + l2_norm_sq(grid200, U));
        CHECK(direct == doctest::Approx(via_identity).epsilon(1e-11));
    }
}

TEST_CASE("chart coordinates") {
    const auto basis = spectrum_at_infinity(3.0, 3, grid200);

    HemispherePoint p1{basis.eigenfunctions[0], 0.0};
    const auto c1 = chart_change(p1, 1, basis);
    CHECK(c1.zeta == 0.0);
    CHECK(l2_distance(grid200, c1.xi, basis.eigenfunctions[0]) <= 1e-12);

    Field mixed = basis.eigenfunctions[0];
    add_scaled(mixed, 1.0, basis.eigenfunctions[1]);
    mixed = unit(std::move(mixed), grid200);
    const auto c2 = chart_change({mixed, 0.0}, 2, basis);
    const auto coeffs = modal_coefficients(c2.xi, basis);
    CHECK(coeffs[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(coeffs[1] == doctest::Approx(1.0).epsilon(1e-10));

    HemispherePoint p2{basis.eigenfunctions[1], 0.0};
    CHECK_THROWS_WITH(static_cast<void>(chart_change(p2, 1, basis)), "outside chart C_1");
}

TEST_CASE("closed-form chart flow: signs and the pinned coordinate") {
    const auto basis = spectrum_at_infinity(3.0, 4, grid200);
    const std::vector<double> xi0{0.5, 1.0, 0.25, 0.125};

    const auto at2 = xi_flow_closed_form(xi0, 2, basis, 3.0);
    CHECK(at2[1] == 1.0);
    CHECK(at2[0] > xi0[0]);  // mu_1 - mu_2 > 0
    CHECK(at2[2] < xi0[2]);
    CHECK(at2[3] < xi0[3]);

    const std::vector<double> xi0_c1{1.0, 0.5, 0.25, 0.125};
    const auto at1 = xi_flow_closed_form(xi0_c1, 1, basis, 3.0);
    CHECK(at1[0] == 1.0);
    for (int k : {1, 2, 3}) CHECK(at1[static_cast<std::size_t>(k)] < xi0_c1[static_cast<std::size_t>(k)]);

    const auto rk = xi_flow_rk4(xi0, 2, basis, 5.0, 1e-3);
    const auto cf = xi_flow_closed_form(xi0, 2, basis, 5.0);
    for (std::size_t i = 0; i < rk.size(); ++i)
        CHECK(std::abs(rk[i] - cf[i]) <= 1e-6 * (1.0 + std::abs(cf[i])));
}

TEST_CASE("chart flow is conjugate to the hemisphere flow near the equator") {
    // tight discretization: the comparison is against the closed form with
    // the analytic eigenvalues, so both the spatial eigenvalue defect and
    // the time-stepping rate bias must sit below the 1e-4 target over t in
    // [0,5] where the leading mode ratio spans eight decades
    const Grid grid(1600);
    const double lambda = 3.0;
    const auto basis = spectrum_at_infinity(lambda, 3, grid);

    Field U0 = basis.eigenfunctions[1];
    const double delta = 1e-6;
    add_scaled(U0, delta, basis.eigenfunctions[0]);
    add_scaled(U0, delta, basis.eigenfunctions[2]);
    scale(U0, 1.0 / l2_norm(grid, U0));

    CompactOptions opts;
    opts.t_end = 5.0;
    opts.dt = 2.5e-4;
    opts.sample_interval = 1.0;
    opts.scheme = TimeScheme::crank_nicolson;
    const auto traj = infinity_flow_simulate(U0, lambda, grid, opts);

    const auto xi0 = chart_change({traj.states.front(), 0.0}, 2, basis);
    const auto xi0_coeffs = modal_coefficients(xi0.xi, basis);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const auto expected = xi_flow_closed_form(xi0_coeffs, 2, basis, t);
        const auto chart = chart_change({traj.states[i], 0.0}, 2, basis);
        const auto actual = modal_coefficients(chart.xi, basis);
        CHECK(std::abs(actual[0] - expected[0]) <= 1e-4 * (1.0 + std::abs(expected[0])));
        CHECK(std::abs(actual[2] - expected[2]) <= 1e-4 * (1.0 + std::abs(expected[2])));
    }
}
