#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steklov/equilibria.hpp"
#include "steklov/grid.hpp"
#include "steklov/nonlinearity.hpp"

namespace steklov {

/// The five parameter regimes delimited by sigma*_1 < sigma_1 < sigma*_2 < sigma_2.
enum class Regime { R1, R2, R3, R4, R5 };

std::string regime_name(Regime r);

/// Classifies lambda against the bifurcation values sigma*_i = sigma_i - g'(0)
/// and sigma_i. Throws "non-hyperbolic parameter" within 1e-10 of any of them.
Regime classify_regime(double lambda, const BoundaryNonlinearity& g);

struct AttractorNode {
    std::string id;     // equal to label; unique in the graph
    std::string kind;   // bounded | infinity
    std::string label;  // 0, +u1, -u1, +u2, -u2, +phi1, -phi1, +phi2, -phi2
    std::optional<int> morse_index;
    Field profile;  // equilibrium profile (bounded) or eigenfunction (infinity)
};

struct EdgeEvidence {
    bool asserted = true;  // no simulation attached
    bool verified = false;
    double final_distance = 0.0;
    double sim_time = 0.0;
};

struct AttractorEdge {
    std::string source, target;
    std::string kind;  // bounded | blowup | at_infinity
    EdgeEvidence evidence;
};

struct AttractorGraph {
    double lambda = 0.0;
    Regime regime = Regime::R1;
    std::vector<AttractorNode> nodes;
    std::vector<AttractorEdge> edges;
};

struct VerifyOptions {
    double epsilon = 1e-2;    // perturbation along the unstable eigenfunction
    double tolerance = 1e-2;  // distance below which an edge is verified
    double dt = 1e-3;
    double t_end_bounded = 60.0;
    double t_end_blowup = 60.0;
    double t_end_infinity = 30.0;
    double blowup_threshold = 1e4;
};

/// Assembles the attractor graph for the regime of lambda. With verify=true
/// every edge is backed by a trajectory started at source + epsilon times the
/// unstable eigenfunction (full problem for bounded/blowup edges, flow at
/// infinity for at_infinity edges); edges whose run does not land within
/// tolerance stay flagged unverified but the graph is still returned.
AttractorGraph build_attractor(double lambda, const BoundaryNonlinearity& g, const Grid& grid, bool verify,
                               const VerifyOptions& opts = {});

struct ShadowingReport {
    double epsilon = 0.0;
    double t_near2 = 0.0;   // first time the rescaled distance to phi_2 drops below 0.1
    double t_switch = 0.0;  // first later time the distance to phi_1 drops below 0.1
    bool switched = false;
    double t_end = 0.0;
};

struct ShadowingOptions {
    double dt = 1e-3;
    double t_end = 20.0;
    double blowup_threshold = 1e8;  // large so the switch completes before cutoff
    double near_tolerance = 0.1;
};

/// Starts at u0 = 0.01 (epsilon phi_1 + phi_2) for lambda > sigma_2 and
/// reports the transient ride along phi_2 followed by the switch to phi_1.
/// Throws "transient not observed" when the trajectory never approaches
/// phi_2. epsilon = 0 data stays in the odd-symmetric class and never
/// switches (switched = false).
ShadowingReport shadowing_experiment(double lambda, double epsilon, const BoundaryNonlinearity& g,
                                     const Grid& grid, const ShadowingOptions& opts = {});

}  // namespace steklov
