#pragma once

#include <vector>

#include "steklov/grid.hpp"
#include "steklov/nonlinearity.hpp"

namespace steklov {

/// Which closed-form family an eigenfunction belongs to.
enum class EigenFamily {
    exp_symmetric,    // mu > -1, phi ~ e^{sx} + e^{s(1-x)}
    exp_antisym,      // mu > -1, phi ~ e^{sx} - e^{s(1-x)}
    affine,           // mu = -1 (gamma 0 or 2)
    trig,             // mu < -1, phi ~ s cos(sx) - gamma sin(sx)
};

/// Spectrum of phi_xx - phi = mu phi with -phi_x(0) = gamma phi(0),
/// phi_x(1) = gamma phi(1). Eigenvalues strictly decreasing; eigenfunctions
/// trapezoid-orthonormal on the grid, sign fixed so phi(0) >= 0.
struct RobinSpectrum {
    double gamma = 0.0;
    std::vector<double> eigenvalues;
    std::vector<Field> eigenfunctions;
    std::vector<EigenFamily> families;
    int n_max = 0;
    Grid grid;
};

/// The n_max largest eigenvalues and eigenfunctions for Robin coefficient
/// gamma. Roots with mu > -1 solve e^s(s-gamma) = +-(s+gamma), s=sqrt(1+mu);
/// roots with mu < -1 solve tan(s) = 2 gamma s / (gamma^2 - s^2),
/// s=sqrt(-(1+mu)), bracketed between consecutive singularities. mu = -1 is
/// included exactly when gamma is within 1e-9 of 0 or 2.
///
/// Throws "grid too coarse" when a requested mode would have fewer than 8
/// nodes per half-wave, and a bracketing error naming the interval when a
/// bracket collapses at a resonance.
RobinSpectrum solve_spectrum(double gamma, int n_max, const Grid& grid);

/// Linearization "at infinity": gamma = lambda. Identical code path to
/// solve_spectrum by construction.
RobinSpectrum spectrum_at_infinity(double lambda, int n_max, const Grid& grid);

/// Linearization at the trivial equilibrium: gamma = lambda + g'(0).
RobinSpectrum linearized_spectrum_at_zero(double lambda, const BoundaryNonlinearity& g, int n_max,
                                          const Grid& grid);

/// Linearization at an equilibrium profile: gamma = lambda + g'(u*(0)).
/// Requires |g'(u*(0)) - g'(u*(1))| <= 1e-10 (throws "asymmetric Robin
/// coefficients unsupported" otherwise).
RobinSpectrum linearized_spectrum_at(const Field& u_star, double lambda, const BoundaryNonlinearity& g,
                                     int n_max, const Grid& grid);

/// Number of strictly positive eigenvalues. Throws "non-hyperbolic at this
/// lambda" when an eigenvalue lies within 1e-8 of zero.
int morse_index(const RobinSpectrum& spec);

/// Closed-form defect of the x=1 boundary condition for eigenvalue mu of the
/// Robin problem with coefficient gamma, normalized by the profile scale.
/// The x=0 condition is built in, so this measures root accuracy.
double robin_bc_residual(double mu, double gamma);

}  // namespace steklov
