#pragma once

#include <optional>
#include <vector>

#include "steklov/grid.hpp"
#include "steklov/nonlinearity.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/steklov_problem.hpp"

namespace steklov {

/// One of the two explicit equilibrium families u^i(x) = c * k_i-scaled
/// boundary-eigenfunction profile, parameterized by the amplitude c.
struct EquilibriumBranch {
    int branch_id = 1;          // 1 or 2
    double scale_factor = 0.0;  // k_1 = 1+e, k_2 = e-1
    double base_sigma = 0.0;    // sigma_1 or sigma_2
    BoundaryNonlinearity g;
};

EquilibriumBranch make_branch(int branch_id, const BoundaryNonlinearity& g);

struct LambdaOfAmplitude {
    double lambda = 0.0;
    bool is_limit = false;  // true when c=0 was extended by lambda -> sigma - g'(0)
};

/// lambda(c) = sigma_i - g(k_i c)/(k_i c); at c=0 returns the continuous
/// extension sigma_i - g'(0) flagged as a limit value.
LambdaOfAmplitude lambda_of_amplitude(const EquilibriumBranch& branch, double c);

/// All amplitudes c in [c_lo, c_hi] with lambda(c) = lambda, found by a
/// log-spaced sign-change scan plus bisection. c_lo must be positive; pass
/// negative amplitudes through the odd symmetry c -> -c.
std::vector<double> amplitudes_at_lambda(const EquilibriumBranch& branch, double lambda, double c_lo,
                                         double c_hi, int scan_points = 4000);

/// c[e^x + e^{1-x}] (branch 1) or c[e^x - e^{1-x}] (branch 2) on the grid.
Field equilibrium_profile(int branch_id, double c, const Grid& grid);

struct BifurcationPoint {
    double lambda = 0.0;
    double amplitude = 0.0;
    int branch_id = 0;
    enum class Stability { stable, saddle, unknown } stability = Stability::unknown;
    int morse = -1;  // valid when stability != unknown
};

struct DiagramOptions {
    double lambda_min = -1e300, lambda_max = 1e300;  // filter on recorded lambda
    double c_min = 1e-3, c_max = 1e3;
    int steps = 200;          // points per sign of c, log-spaced
    bool with_stability = true;
    int grid_cells = 200;     // grid for the stability spectra
};

/// Sweeps c over a log-spaced mesh for each requested branch and both signs,
/// recording (lambda(c), c) with the linearized stability where hyperbolic.
std::vector<BifurcationPoint> bifurcation_diagram(const BoundaryNonlinearity& g,
                                                  const std::vector<int>& branches,
                                                  const DiagramOptions& opts);

}  // namespace steklov
