#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steklov/grid.hpp"
#include "steklov/nonlinearity.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/tridiag.hpp"

namespace steklov {

enum class TimeScheme { backward_euler, crank_nicolson };

/// One IMEX step of u_t = u_xx - u with nonlinear Robin boundary conditions.
/// The diffusion, the -u term, and the linear Robin flux lambda*u are
/// implicit; the boundary nonlinearity g enters through second-order ghost
/// nodes evaluated at the current step. Fixed points of the map are exactly
/// the discrete equilibria, independent of dt.
class RobinStepper {
public:
    RobinStepper(const Grid& grid, double lambda, BoundaryNonlinearity g, double dt,
                 TimeScheme scheme = TimeScheme::backward_euler);

    /// Advances u by one step in place. Throws "numerical overflow" when the
    /// result is not finite (switch to the compactified integrator instead).
    void advance(Field& u) const;

    double dt() const { return dt_; }
    const Grid& grid() const { return grid_; }
    static double dt_max(const Grid& grid) { return grid.h; }

private:
    Grid grid_;
    double lambda_;
    BoundaryNonlinearity g_;
    double dt_;
    TimeScheme scheme_;
    Tridiag lhs_;                    // I - theta*dt*A
    std::vector<double> a_sub_, a_diag_, a_sup_;  // A itself (for the CN rhs)
};

/// Convenience single step on a copy.
Field step(const Field& u, double dt, double lambda, const BoundaryNonlinearity& g, const Grid& grid,
           TimeScheme scheme = TimeScheme::backward_euler);

struct Event {
    std::string type;  // blowup_threshold | converged | steady
    double time = 0.0;
    double value = 0.0;  // L2 norm at the event
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> l2_norms;
    std::vector<double> energies;
    std::vector<std::vector<double>> modal;  // modal[i][n] = <u(t_i), phi_{n+1}>
    std::vector<Event> events;
    RobinSpectrum basis;  // at-infinity eigenbasis used for the modal columns
    Field final_state;
    double final_time = 0.0;
    double lambda = 0.0;
    Grid grid;

    bool has_event(const std::string& type) const {
        for (const auto& e : events)
            if (e.type == type) return true;
        return false;
    }
};

struct SimulateOptions {
    double t_end = 10.0;
    double dt = 1e-3;
    int n_modes = 6;
    double blowup_threshold = 1e4;
    double sample_interval = 0.1;
    TimeScheme scheme = TimeScheme::backward_euler;
    bool stop_when_steady = true;
};

/// Integrates until t_end or the blow-up threshold, sampling norms, energy
/// and modal coefficients against the at-infinity basis (gamma = lambda).
TrajectoryRecord simulate(const Field& u0, double lambda, const BoundaryNonlinearity& g, const Grid& grid,
                          const SimulateOptions& opts);

/// Lyapunov energy 1/2 int (u_x^2 + u^2) dx minus the boundary potentials
/// lambda*u^2/2 + int_0^u g at both endpoints; u_x by centered differences.
double energy(const Field& u, double lambda, const BoundaryNonlinearity& g, const Grid& grid);

/// Least-squares slope of ln|u_n| over the sample window [t0, t1]
/// (n is 1-based). Throws "mode not in growth regime" when u_n vanishes or
/// changes sign inside the window.
double fit_growth_rate(const TrajectoryRecord& record, int n, double t0, double t1);

struct BlowupClassification {
    bool blowup = false;
    int iota = 0;        // -1 or +1
    int mode = 0;        // 1 or 2
    double final_distance = 0.0;
    double distance_mode1 = 0.0;  // best-over-sign distance to phi_1
    double distance_mode2 = 0.0;  // best-over-sign distance to phi_2
};

/// Classifies a finished record: bounded, or blow-up toward iota*phi_N with
/// the rescaled L2 distance at the threshold. Distances within 1e-3 of each
/// other resolve to N=1. Throws "unclassified blow-up direction" when the
/// best distance exceeds tol.
BlowupClassification detect_blowup(const TrajectoryRecord& record, const RobinSpectrum& inf_spec,
                                   double tol);

/// r_n(t) = d u_n/dt (central differences over samples) - mu_n u_n(t);
/// approximates the bounded modal forcing. One-sided at the ends.
std::vector<double> modal_residual(const TrajectoryRecord& record, int n);

}  // namespace steklov
