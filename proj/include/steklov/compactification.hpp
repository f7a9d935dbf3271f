#pragma once

#include <vector>

#include "steklov/grid.hpp"
#include "steklov/nonlinearity.hpp"
#include "steklov/pde.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

/// Point on the unit upper hemisphere in L2 x R: ||U||^2 + z^2 = 1, z >= 0.
/// z = 1 is the origin of phase space, z = 0 the sphere at infinity.
struct HemispherePoint {
    Field U;
    double z = 1.0;
};

/// Central projection (u,1) -> (u,1)/sqrt(1+||u||^2).
HemispherePoint project(const Field& u, const Grid& grid);

/// Inverse U/z; throws "point at infinity has no preimage" for z <= 1e-12.
Field unproject(const HemispherePoint& p, const Grid& grid);

struct CompactTrajectory {
    std::vector<double> times;
    std::vector<Field> states;  // U at sample times
    std::vector<double> z;
    double max_drift = 0.0;  // worst |(||U||^2+z^2) - 1| before renormalization
};

struct CompactOptions {
    double t_end = 10.0;
    double dt = 1e-3;
    double sample_interval = 0.1;
    TimeScheme scheme = TimeScheme::backward_euler;
};

/// Integrates the projected flow U_t = U_xx - U - <U_xx - U, U> U with
/// boundary nonlinearity g^z(U) = z g(U/z) and z_t = -<U_xx - U, U> z,
/// renormalizing onto the constraint sphere after each step. The nonlocal
/// term is evaluated through the boundary-flux identity, which the discrete
/// operator satisfies exactly. At z = 0 the flow reduces to the linear-Robin
/// flow at infinity and z stays 0.
CompactTrajectory hemisphere_simulate(const HemispherePoint& p0, double lambda,
                                      const BoundaryNonlinearity& g, const Grid& grid,
                                      const CompactOptions& opts);

/// The flow on the sphere at infinity (z = 0): linear Robin boundary
/// conditions, renormalized to the unit L2 sphere each step.
/// Requires ||U0|| = 1 within 1e-8.
CompactTrajectory infinity_flow_simulate(const Field& U0, double lambda, const Grid& grid,
                                         const CompactOptions& opts);

/// Tangent-chart coordinates at (phi_N, 0): (xi, zeta) = (U, z)/<U, phi_N>.
struct TangentChartPoint {
    int chart = 1;  // N
    Field xi;       // <xi, phi_N> = 1
    double zeta = 0.0;
};

/// Throws "outside chart C_N" when <U, phi_N> <= 1e-10.
TangentChartPoint chart_change(const HemispherePoint& p, int chart, const RobinSpectrum& basis);

std::vector<double> modal_coefficients(const Field& u, const RobinSpectrum& basis);

/// Closed-form linear chart flow xi_n(t) = xi_n(0) exp((mu_n - mu_N) t),
/// with xi_N pinned to 1. xi0 must have xi0[N-1] = 1 within 1e-10.
std::vector<double> xi_flow_closed_form(const std::vector<double>& xi0, int chart,
                                        const RobinSpectrum& spec, double t);

/// RK4 integration of the same diagonal linear system, for cross-checking
/// the closed form.
std::vector<double> xi_flow_rk4(const std::vector<double>& xi0, int chart, const RobinSpectrum& spec,
                                double t, double dt);

/// L2 norm of U_xx - U - <U_xx - U, U> U at the sphere at infinity, with the
/// BC-consistent ghost extension (gamma = lambda). Requires ||phi|| = 1
/// within 1e-8.
double infinity_equilibrium_residual(const Field& phi, double lambda, const Grid& grid);

}  // namespace steklov
