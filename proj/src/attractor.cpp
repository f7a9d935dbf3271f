#include "steklov/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steklov/compactification.hpp"
#include "steklov/parallel.hpp"
#include "steklov/pde.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/steklov_problem.hpp"

namespace steklov {

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::R1: return "R1";
        case Regime::R2: return "R2";
        case Regime::R3: return "R3";
        case Regime::R4: return "R4";
        case Regime::R5: return "R5";
    }
    return "?";
}

Regime classify_regime(double lambda, const BoundaryNonlinearity& g) {
    const double gp0 = g.deriv(0.0);
    if (std::abs(gp0 - 1.0) > 1e-12)
        throw std::invalid_argument("regime classification requires g'(0)=1");
    const double s1 = steklov_sigma1(), s2 = steklov_sigma2();
    const double s1s = s1 - gp0, s2s = s2 - gp0;
    for (double b : {s1s, s1, s2s, s2})
        if (std::abs(lambda - b) < 1e-10) throw std::runtime_error("non-hyperbolic parameter");
    if (lambda < s1s) return Regime::R1;
    if (lambda < s1) return Regime::R2;
    if (lambda < s2s) return Regime::R3;
    if (lambda < s2) return Regime::R4;
    return Regime::R5;
}

namespace {

struct VerificationRun {
    Field u0;                          // initial state (full problem or infinity flow)
    std::string source;                // node id
    std::string kind;                  // bounded | blowup | at_infinity
    std::vector<std::string> targets;  // candidate targets, matched by distance
};

// smallest positive amplitude of the branch at this lambda
double branch_amplitude(int branch_id, double lambda, const BoundaryNonlinearity& g) {
    const EquilibriumBranch branch = make_branch(branch_id, g);
    const std::vector<double> roots = amplitudes_at_lambda(branch, lambda, 1e-8, 1e6, 8000);
    if (roots.empty()) throw std::runtime_error("no equilibrium amplitude found on the branch");
    return roots.front();
}

Field normalized(Field f, const Grid& grid) {
    scale(f, 1.0 / l2_norm(grid, f));
    return f;
}

}  // namespace

AttractorGraph build_attractor(double lambda, const BoundaryNonlinearity& g, const Grid& grid, bool verify,
                               const VerifyOptions& opts) {
    AttractorGraph graph;
    graph.lambda = lambda;
    graph.regime = classify_regime(lambda, g);

    const RobinSpectrum at_zero = linearized_spectrum_at_zero(lambda, g, 2, grid);
    const RobinSpectrum at_inf = spectrum_at_infinity(lambda, 2, grid);

    const auto add_bounded = [&](const std::string& label, const Field& profile, int morse) {
        graph.nodes.push_back({label, "bounded", label, morse, profile});
    };
    const auto add_infinity = [&](const std::string& label, const Field& profile) {
        graph.nodes.push_back({label, "infinity", label, std::nullopt, profile});
    };
    const auto add_edge = [&](const std::string& s, const std::string& t, const std::string& kind) {
        graph.edges.push_back({s, t, kind, EdgeEvidence{}});
    };
    const auto negated = [](Field f) {
        scale(f, -1.0);
        return f;
    };

    const Field zero_profile(static_cast<std::size_t>(grid.n_nodes()), 0.0);
    add_bounded("0", zero_profile, morse_index(at_zero));

    std::vector<VerificationRun> runs;
    const double eps = opts.epsilon;

    const auto perturbed_zero = [&](int mode, double amp) {
        Field u0 = zero_profile;
        add_scaled(u0, amp, at_zero.eigenfunctions[static_cast<std::size_t>(mode - 1)]);
        return u0;
    };

    switch (graph.regime) {
        case Regime::R1:
            break;

        case Regime::R2: {
            const double c = branch_amplitude(1, lambda, g);
            const Field up = equilibrium_profile(1, c, grid);
            const Field um = equilibrium_profile(1, -c, grid);
            const int morse = morse_index(linearized_spectrum_at(up, lambda, g, 3, grid));
            add_bounded("+u1", up, morse);
            add_bounded("-u1", um, morse);
            add_edge("0", "+u1", "bounded");
            add_edge("0", "-u1", "bounded");
            runs.push_back({perturbed_zero(1, +eps), "0", "bounded", {"+u1", "-u1"}});
            runs.push_back({perturbed_zero(1, -eps), "0", "bounded", {"+u1", "-u1"}});
            break;
        }

        case Regime::R3: {
            add_infinity("+phi1", at_inf.eigenfunctions[0]);
            add_infinity("-phi1", negated(at_inf.eigenfunctions[0]));
            add_edge("0", "+phi1", "blowup");
            add_edge("0", "-phi1", "blowup");
            runs.push_back({perturbed_zero(1, +eps), "0", "blowup", {"+phi1", "-phi1"}});
            runs.push_back({perturbed_zero(1, -eps), "0", "blowup", {"+phi1", "-phi1"}});
            break;
        }

        case Regime::R4: {
            const double c = branch_amplitude(2, lambda, g);
            const Field up = equilibrium_profile(2, c, grid);
            const Field um = equilibrium_profile(2, -c, grid);
            const int morse = morse_index(linearized_spectrum_at(up, lambda, g, 3, grid));
            add_bounded("+u2", up, morse);
            add_bounded("-u2", um, morse);
            add_infinity("+phi1", at_inf.eigenfunctions[0]);
            add_infinity("-phi1", negated(at_inf.eigenfunctions[0]));
            add_edge("0", "+u2", "bounded");
            add_edge("0", "-u2", "bounded");
            add_edge("0", "+phi1", "blowup");
            add_edge("0", "-phi1", "blowup");
            // one-dimensional unstable manifolds of the saddles: both sides
            // are emitted as candidates and resolved by the runs
            add_edge("+u2", "+phi1", "blowup");
            add_edge("+u2", "-phi1", "blowup");
            add_edge("-u2", "+phi1", "blowup");
            add_edge("-u2", "-phi1", "blowup");

            runs.push_back({perturbed_zero(2, +eps), "0", "bounded", {"+u2", "-u2"}});
            runs.push_back({perturbed_zero(2, -eps), "0", "bounded", {"+u2", "-u2"}});
            runs.push_back({perturbed_zero(1, +eps), "0", "blowup", {"+phi1", "-phi1"}});
            runs.push_back({perturbed_zero(1, -eps), "0", "blowup", {"+phi1", "-phi1"}});

            const RobinSpectrum at_saddle = linearized_spectrum_at(up, lambda, g, 1, grid);
            for (double side : {+eps, -eps}) {
                Field u0 = up;
                add_scaled(u0, side, at_saddle.eigenfunctions[0]);
                runs.push_back({u0, "+u2", "blowup", {"+phi1", "-phi1"}});
            }
            for (double side : {+eps, -eps}) {
                Field u0 = um;
                add_scaled(u0, side, at_saddle.eigenfunctions[0]);
                runs.push_back({u0, "-u2", "blowup", {"+phi1", "-phi1"}});
            }
            break;
        }

        case Regime::R5: {
            add_infinity("+phi1", at_inf.eigenfunctions[0]);
            add_infinity("-phi1", negated(at_inf.eigenfunctions[0]));
            add_infinity("+phi2", at_inf.eigenfunctions[1]);
            add_infinity("-phi2", negated(at_inf.eigenfunctions[1]));
            for (const char* t : {"+phi1", "-phi1", "+phi2", "-phi2"}) add_edge("0", t, "blowup");
            add_edge("+phi2", "+phi1", "at_infinity");
            add_edge("+phi2", "-phi1", "at_infinity");
            add_edge("-phi2", "+phi1", "at_infinity");
            add_edge("-phi2", "-phi1", "at_infinity");

            runs.push_back({perturbed_zero(1, +eps), "0", "blowup", {"+phi1", "-phi1", "+phi2", "-phi2"}});
            runs.push_back({perturbed_zero(1, -eps), "0", "blowup", {"+phi1", "-phi1", "+phi2", "-phi2"}});
            runs.push_back({perturbed_zero(2, +eps), "0", "blowup", {"+phi1", "-phi1", "+phi2", "-phi2"}});
            runs.push_back({perturbed_zero(2, -eps), "0", "blowup", {"+phi1", "-phi1", "+phi2", "-phi2"}});

            for (double s2 : {+1.0, -1.0}) {
                for (double s1 : {+1.0, -1.0}) {
                    Field U0 = at_inf.eigenfunctions[1];
                    scale(U0, s2);
                    add_scaled(U0, s1 * eps, at_inf.eigenfunctions[0]);
                    U0 = normalized(std::move(U0), grid);
                    runs.push_back({U0, s2 > 0 ? "+phi2" : "-phi2", "at_infinity",
                                    {"+phi1", "-phi1"}});
                }
            }
            break;
        }
    }

    if (!verify || runs.empty()) return graph;

    struct RunResult {
        std::string source, target, kind;
        double distance = 0.0;
        double time = 0.0;
        bool ok = false;
    };
    std::vector<RunResult> results(runs.size());

    parallel_for(runs.size(), [&](std::size_t i) {
        const VerificationRun& run = runs[i];
        RunResult& res = results[i];
        res.source = run.source;
        res.kind = run.kind;

        const auto node_profile = [&](const std::string& id) -> const Field& {
            for (const auto& nd : graph.nodes)
                if (nd.id == id) return nd.profile;
            throw std::logic_error("unknown node " + id);
        };

        if (run.kind == "at_infinity") {
            CompactOptions copts;
            copts.t_end = opts.t_end_infinity;
            copts.dt = opts.dt;
            const CompactTrajectory traj = infinity_flow_simulate(run.u0, lambda, grid, copts);
            const Field& UT = traj.states.back();
            double best = 1e300;
            for (const auto& t : run.targets) {
                const double d = l2_distance(grid, UT, normalized(node_profile(t), grid));
                if (d < best) {
                    best = d;
                    res.target = t;
                }
            }
            res.distance = best;
            res.time = traj.times.back();
        } else {
            SimulateOptions sopts;
            sopts.t_end = run.kind == "bounded" ? opts.t_end_bounded : opts.t_end_blowup;
            sopts.dt = opts.dt;
            sopts.blowup_threshold = opts.blowup_threshold;
            sopts.n_modes = 2;
            const TrajectoryRecord rec = simulate(run.u0, lambda, g, grid, sopts);
            if (run.kind == "bounded") {
                double best = 1e300;
                for (const auto& t : run.targets) {
                    const double d = l2_distance(grid, rec.final_state, node_profile(t));
                    if (d < best) {
                        best = d;
                        res.target = t;
                    }
                }
                res.distance = best;
            } else {
                if (!rec.has_event("blowup_threshold")) {
                    res.distance = 1e300;  // no blow-up: cannot verify
                    res.target = run.targets.front();
                } else {
                    Field w = rec.final_state;
                    scale(w, 1.0 / l2_norm(grid, w));
                    double best = 1e300;
                    for (const auto& t : run.targets) {
                        const double d = l2_distance(grid, w, node_profile(t));
                        if (d < best) {
                            best = d;
                            res.target = t;
                        }
                    }
                    res.distance = best;
                }
            }
            res.time = rec.final_time;
        }
        res.ok = res.distance < opts.tolerance;
    });

    for (const RunResult& res : results) {
        for (auto& e : graph.edges) {
            if (e.source == res.source && e.target == res.target && e.kind == res.kind) {
                // keep the best evidence when two runs land on the same edge
                if (!e.evidence.verified || res.distance < e.evidence.final_distance) {
                    e.evidence.asserted = false;
                    e.evidence.verified = res.ok;
                    e.evidence.final_distance = res.distance;
                    e.evidence.sim_time = res.time;
                }
                break;
            }
        }
    }
    return graph;
}

ShadowingReport shadowing_experiment(double lambda, double epsilon, const BoundaryNonlinearity& g,
                                     const Grid& grid, const ShadowingOptions& opts) {
    if (classify_regime(lambda, g) != Regime::R5)
        throw std::invalid_argument("shadowing experiment requires lambda > sigma_2");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");

    const RobinSpectrum basis = spectrum_at_infinity(lambda, 2, grid);
    Field u0 = basis.eigenfunctions[1];
    add_scaled(u0, epsilon, basis.eigenfunctions[0]);
    scale(u0, 0.01);

    SimulateOptions sopts;
    sopts.t_end = opts.t_end;
    sopts.dt = opts.dt;
    sopts.n_modes = 2;
    sopts.blowup_threshold = opts.blowup_threshold;
    const TrajectoryRecord rec = simulate(u0, lambda, g, grid, sopts);

    ShadowingReport report;
    report.epsilon = epsilon;
    report.t_end = rec.final_time;
    bool near2 = false;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const double r = rec.l2_norms[i];
        if (r == 0.0) continue;
        // || u/r - iota*phi_N || = sqrt(2 - 2|u_N|/r) for the orthonormal basis
        const double d2 = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(rec.modal[i][1]) / r));
        const double d1 = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(rec.modal[i][0]) / r));
        if (!near2 && d2 < opts.near_tolerance) {
            near2 = true;
            report.t_near2 = rec.times[i];
        }
        if (near2 && !report.switched && rec.times[i] > report.t_near2 && d1 < opts.near_tolerance) {
            report.switched = true;
            report.t_switch = rec.times[i];
        }
    }
    if (!near2) throw std::runtime_error("transient not observed");
    return report;
}

}  // namespace steklov
