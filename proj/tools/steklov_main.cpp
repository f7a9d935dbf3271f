// Command-line front end: every subcommand computes through the library and
// emits deterministic CSV (10 significant digits) or JSON (full precision).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "steklov/attractor.hpp"
#include "steklov/compactification.hpp"
#include "steklov/equilibria.hpp"
#include "steklov/format.hpp"
#include "steklov/grid.hpp"
#include "steklov/nonlinearity.hpp"
#include "steklov/pde.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/steklov_problem.hpp"

namespace {

using nlohmann::json;
using namespace steklov;

struct GlobalConfig {
    int grid_cells = 200;
    double dt = 1e-3;
    unsigned long seed = 0;
    std::string out;
    std::string format = "csv";
};

void write_output(const GlobalConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
    f << text;
}

Field parse_initial_condition(const std::string& spec, double lambda, const BoundaryNonlinearity& g,
                              const Grid& grid) {
    (void)g;
    if (spec == "zero") return Field(static_cast<std::size_t>(grid.n_nodes()), 0.0);
    if (spec.rfind("eigmode:", 0) == 0) {
        std::istringstream ss(spec.substr(8));
        int n = 0;
        double amp = 0.0;
        char sep = 0;
        if (!(ss >> n >> sep >> amp) || sep != ':') throw std::runtime_error("bad --ic eigmode spec: " + spec);
        const RobinSpectrum basis = spectrum_at_infinity(lambda, n, grid);
        Field u0(static_cast<std::size_t>(grid.n_nodes()), 0.0);
        add_scaled(u0, amp, basis.eigenfunctions[static_cast<std::size_t>(n - 1)]);
        return u0;
    }
    if (spec.rfind("branch:", 0) == 0) {
        std::istringstream ss(spec.substr(7));
        int id = 0;
        double c = 0.0;
        char sep = 0;
        if (!(ss >> id >> sep >> c) || sep != ':') throw std::runtime_error("bad --ic branch spec: " + spec);
        return equilibrium_profile(id, c, grid);
    }
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open initial-condition file " + path);
        Field u0(static_cast<std::size_t>(grid.n_nodes()), 0.0);
        std::string line;
        std::size_t i = 0;
        while (std::getline(f, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw std::runtime_error("bad row in " + path + ": " + line);
            const double x = std::stod(line.substr(0, comma));
            const double v = std::stod(line.substr(comma + 1));
            if (i >= u0.size() || std::abs(x - grid.nodes[i]) > 1e-12)
                throw std::runtime_error("initial-condition nodes must match the grid exactly");
            u0.values[i++] = v;
        }
        if (i != u0.size()) throw std::runtime_error("initial-condition file is shorter than the grid");
        return u0;
    }
    throw std::runtime_error("unknown --ic spec: " + spec);
}

std::string stability_name(BifurcationPoint::Stability s, int morse) {
    switch (s) {
        case BifurcationPoint::Stability::stable: return "stable";
        case BifurcationPoint::Stability::saddle: return "saddle(" + std::to_string(morse) + ")";
        case BifurcationPoint::Stability::unknown: return "unknown";
    }
    return "unknown";
}

int run_steklov_cmd(const GlobalConfig& cfg, int n, const std::string& norm) {
    const Grid grid(n);
    const Normalization normalization = norm == "l2" ? Normalization::l2_norm : Normalization::sup_norm;
    const auto pairs = steklov_eigenpairs(grid, normalization);
    if (cfg.format == "json") {
        json j;
        j["sigma1"] = pairs[0].sigma;
        j["sigma2"] = pairs[1].sigma;
        j["norm"] = norm;
        j["x"] = grid.nodes;
        j["phi1"] = pairs[0].profile.values;
        j["phi2"] = pairs[1].profile.values;
        write_output(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::string out = "# steklov n=" + std::to_string(n) + " norm=" + norm + "\n";
    out += "# sigma1=" + fmt_fixed10(pairs[0].sigma) + ", sigma2=" + fmt_fixed10(pairs[1].sigma) + "\n";
    out += "x,phi1,phi2\n";
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        out += fmt10(grid.nodes[i]) + "," + fmt10(pairs[0].profile.values[i]) + "," +
               fmt10(pairs[1].profile.values[i]) + "\n";
    write_output(cfg, out);
    return 0;
}

int run_spectrum_cmd(const GlobalConfig& cfg, bool has_gamma, double gamma, bool has_lambda, double lambda,
                     const std::string& at, const std::string& g_name, int n_eigs, bool emit_eigs) {
    const Grid grid(cfg.grid_cells);
    const BoundaryNonlinearity g = builtin_nonlinearity(g_name);
    RobinSpectrum spec;
    std::string desc;
    if (has_gamma) {
        spec = solve_spectrum(gamma, n_eigs, grid);
        desc = "gamma=" + fmt10(gamma);
    } else if (has_lambda) {
        if (at == "zero") {
            spec = linearized_spectrum_at_zero(lambda, g, n_eigs, grid);
        } else if (at == "infinity") {
            spec = spectrum_at_infinity(lambda, n_eigs, grid);
        } else if (at == "branch1" || at == "branch2") {
            const int id = at == "branch1" ? 1 : 2;
            const EquilibriumBranch branch = make_branch(id, g);
            const auto roots = amplitudes_at_lambda(branch, lambda, 1e-8, 1e6, 8000);
            if (roots.empty()) throw std::runtime_error("no equilibrium on " + at + " at this lambda");
            const Field u = equilibrium_profile(id, roots.front(), grid);
            spec = linearized_spectrum_at(u, lambda, g, n_eigs, grid);
        } else {
            throw std::runtime_error("--at must be zero|infinity|branch1|branch2");
        }
        desc = "lambda=" + fmt10(lambda) + " at=" + at + " g=" + g_name;
    } else {
        throw std::runtime_error("spectrum needs --gamma or --lambda");
    }

    if (cfg.format == "json") {
        json j;
        j["gamma"] = spec.gamma;
        j["eigenvalues"] = spec.eigenvalues;
        if (emit_eigs) {
            json eigs = json::array();
            for (const auto& phi : spec.eigenfunctions) eigs.push_back(phi.values);
            j["eigenfunctions"] = eigs;
            j["x"] = grid.nodes;
        }
        write_output(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::string out = "# spectrum " + desc + " n_eigs=" + std::to_string(n_eigs) + " grid=" +
                      std::to_string(cfg.grid_cells) + " resolved_gamma=" + fmt10(spec.gamma) + "\n";
    out += "index,mu\n";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
        out += std::to_string(i + 1) + "," + fmt10(spec.eigenvalues[i]) + "\n";
    if (emit_eigs) {
        out += "\nx";
        for (std::size_t k = 0; k < spec.eigenfunctions.size(); ++k) out += ",phi" + std::to_string(k + 1);
        out += "\n";
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
            out += fmt10(grid.nodes[i]);
            for (const auto& phi : spec.eigenfunctions) out += "," + fmt10(phi.values[i]);
            out += "\n";
        }
    }
    write_output(cfg, out);
    return 0;
}

int run_branch_cmd(const GlobalConfig& cfg, const std::string& g_name, int branch_id, double c_min,
                   double c_max, int steps) {
    const BoundaryNonlinearity g = builtin_nonlinearity(g_name);
    DiagramOptions opts;
    opts.c_min = c_min;
    opts.c_max = c_max;
    opts.steps = steps;
    opts.grid_cells = cfg.grid_cells;
    const auto points = bifurcation_diagram(g, {branch_id}, opts);

    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& p : points)
            rows.push_back({{"lambda", p.lambda},
                            {"branch", p.branch_id},
                            {"amplitude", p.amplitude},
                            {"stability", stability_name(p.stability, p.morse)},
                            {"morse_index", p.morse}});
        json j;
        j["g"] = g_name;
        j["points"] = rows;
        write_output(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::string out = "# branch g=" + g_name + " branch=" + std::to_string(branch_id) + " c_min=" +
                      fmt10(c_min) + " c_max=" + fmt10(c_max) + " steps=" + std::to_string(steps) + "\n";
    out += "lambda,branch,amplitude,stability,morse_index\n";
    for (const auto& p : points)
        out += fmt10(p.lambda) + "," + std::to_string(p.branch_id) + "," + fmt10(p.amplitude) + "," +
               stability_name(p.stability, p.morse) + "," + std::to_string(p.morse) + "\n";
    write_output(cfg, out);
    return 0;
}

int run_simulate_cmd(const GlobalConfig& cfg, double lambda, const std::string& g_name,
                     const std::string& ic, double t_end, double threshold, int n_modes,
                     const std::string& scheme_name) {
    const Grid grid(cfg.grid_cells);
    const BoundaryNonlinearity g = builtin_nonlinearity(g_name);
    const Field u0 = parse_initial_condition(ic, lambda, g, grid);

    SimulateOptions opts;
    opts.t_end = t_end;
    opts.dt = cfg.dt;
    opts.n_modes = n_modes;
    opts.blowup_threshold = threshold;
    opts.scheme = scheme_name == "cn" ? TimeScheme::crank_nicolson : TimeScheme::backward_euler;
    const TrajectoryRecord rec = simulate(u0, lambda, g, grid, opts);

    json events = json::array();
    for (const auto& e : rec.events) events.push_back({{"type", e.type}, {"time", e.time}, {"value", e.value}});

    if (cfg.format == "json") {
        json j;
        j["lambda"] = lambda;
        j["g"] = g_name;
        j["times"] = rec.times;
        j["l2_norms"] = rec.l2_norms;
        j["energies"] = rec.energies;
        j["modal"] = rec.modal;
        j["events"] = events;
        write_output(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::string out = "# simulate lambda=" + fmt10(lambda) + " g=" + g_name + " ic=" + ic + " t_end=" +
                      fmt10(t_end) + " dt=" + fmt10(cfg.dt) + " grid=" + std::to_string(cfg.grid_cells) +
                      " threshold=" + fmt10(threshold) + " scheme=" + scheme_name + "\n";
    out += "t,l2_norm,energy";
    for (int k = 1; k <= n_modes; ++k) out += ",u" + std::to_string(k);
    out += "\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        out += fmt10(rec.times[i]) + "," + fmt10(rec.l2_norms[i]) + "," + fmt10(rec.energies[i]);
        for (double c : rec.modal[i]) out += "," + fmt10(c);
        out += "\n";
    }
    out += "# events " + events.dump() + "\n";
    write_output(cfg, out);
    return 0;
}

int run_compactify_cmd(const GlobalConfig& cfg, double lambda, const std::string& g_name,
                       const std::string& ic, double t_end, bool at_infinity) {
    const Grid grid(cfg.grid_cells);
    const BoundaryNonlinearity g = builtin_nonlinearity(g_name);
    const RobinSpectrum basis = spectrum_at_infinity(lambda, 6, grid);

    CompactOptions opts;
    opts.t_end = t_end;
    opts.dt = cfg.dt;

    CompactTrajectory traj;
    if (at_infinity) {
        Field U0 = parse_initial_condition(ic, lambda, g, grid);
        scale(U0, 1.0 / l2_norm(grid, U0));
        traj = infinity_flow_simulate(U0, lambda, grid, opts);
    } else {
        const Field u0 = parse_initial_condition(ic, lambda, g, grid);
        traj = hemisphere_simulate(project(u0, grid), lambda, g, grid, opts);
    }

    const auto dist_to = [&](const Field& U, int mode) {
        const double r = l2_norm(grid, U);
        if (r < 1e-300) return std::sqrt(2.0);
        const double un = trap_dot(grid, U, basis.eigenfunctions[static_cast<std::size_t>(mode - 1)]);
        return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(un) / r));
    };

    if (cfg.format == "json") {
        json j;
        j["lambda"] = lambda;
        j["at_infinity"] = at_infinity;
        j["times"] = traj.times;
        j["z"] = traj.z;
        j["max_drift"] = traj.max_drift;
        json modal = json::array(), d1 = json::array(), d2 = json::array();
        for (const auto& U : traj.states) {
            modal.push_back(modal_coefficients(U, basis));
            d1.push_back(dist_to(U, 1));
            d2.push_back(dist_to(U, 2));
        }
        j["modal"] = modal;
        j["dist_phi1"] = d1;
        j["dist_phi2"] = d2;
        write_output(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::string out = "# compactify lambda=" + fmt10(lambda) + " g=" + g_name + " ic=" + ic + " t_end=" +
                      fmt10(t_end) + " dt=" + fmt10(cfg.dt) + " grid=" + std::to_string(cfg.grid_cells) +
                      " at_infinity=" + (at_infinity ? std::string("true") : std::string("false")) + "\n";
    out += "t,z,U1,U2,U3,U4,U5,U6,dist_phi1,dist_phi2\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out += fmt10(traj.times[i]) + "," + fmt10(traj.z[i]);
        const auto coeffs = modal_coefficients(traj.states[i], basis);
        for (double c : coeffs) out += "," + fmt10(c);
        out += "," + fmt10(dist_to(traj.states[i], 1)) + "," + fmt10(dist_to(traj.states[i], 2)) + "\n";
    }
    write_output(cfg, out);
    return 0;
}

json graph_to_json(const AttractorGraph& graph) {
    json nodes = json::array();
    for (const auto& n : graph.nodes) {
        json jn = {{"id", n.id}, {"kind", n.kind}, {"label", n.label}};
        if (n.morse_index) jn["morse_index"] = *n.morse_index;
        nodes.push_back(jn);
    }
    json edges = json::array();
    for (const auto& e : graph.edges) {
        json je = {{"source", e.source}, {"target", e.target}, {"kind", e.kind}};
        if (e.evidence.asserted) {
            je["evidence"] = "asserted";
        } else {
            je["evidence"] = {{"final_distance", e.evidence.final_distance},
                              {"sim_time", e.evidence.sim_time},
                              {"verified", e.evidence.verified}};
        }
        edges.push_back(je);
    }
    return json{{"lambda", graph.lambda},
                {"regime", regime_name(graph.regime)},
                {"nodes", nodes},
                {"edges", edges}};
}

int run_attractor_cmd(const GlobalConfig& cfg, double lambda, const std::string& g_name, bool verify) {
    const Grid grid(cfg.grid_cells);
    const BoundaryNonlinearity g = builtin_nonlinearity(g_name);
    VerifyOptions vopts;
    vopts.dt = cfg.dt;
    const AttractorGraph graph = build_attractor(lambda, g, grid, verify, vopts);
    write_output(cfg, graph_to_json(graph).dump(2) + "\n");
    return 0;
}

int run_selftest_cmd(const GlobalConfig& cfg) {
    struct Check {
        std::string name;
        bool ok;
        std::string detail;
    };
    std::vector<Check> checks;
    const auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    };
    const Grid grid(cfg.grid_cells);
    const BoundaryNonlinearity g = builtin_nonlinearity("arctan");

    try {
        const auto pairs = steklov_eigenpairs(grid);
        const double s1 = pairs[0].sigma, s2 = pairs[1].sigma;
        add("steklov_closed_forms",
            std::abs(s1 - (kEuler - 1.0) / (kEuler + 1.0)) < 1e-14 && std::abs(s1 * s2 - 1.0) < 1e-14);
        const auto ident = [](double s) { return (s + 1.0) * (s + 1.0) - kEuler * kEuler * (s - 1.0) * (s - 1.0); };
        add("steklov_characteristic_identity", std::abs(ident(s1)) < 1e-12 && std::abs(ident(s2)) < 1e-12);

        const RobinSpectrum s0 = solve_spectrum(0.0, 4, grid);
        bool ok = true;
        const double pi = std::numbers::pi;
        for (int k = 1; k <= 4; ++k)
            ok = ok && std::abs(s0.eigenvalues[k - 1] - (-1.0 - (k - 1.0) * (k - 1.0) * pi * pi)) < 1e-8;
        add("spectrum_gamma0", ok);

        add("spectrum_steklov_crossings",
            std::abs(solve_spectrum(s1, 1, grid).eigenvalues[0]) < 1e-8 &&
                std::abs(solve_spectrum(s2, 2, grid).eigenvalues[1]) < 1e-8);

        const RobinSpectrum sp2 = solve_spectrum(2.0, 2, grid);
        add("spectrum_affine_mode", std::abs(sp2.eigenvalues[1] + 1.0) < 1e-14);

        const EquilibriumBranch b1 = make_branch(1, g);
        add("pitchfork_limit", std::abs(lambda_of_amplitude(b1, 0.0).lambda - (s1 - 1.0)) < 1e-14);

        const auto roots = amplitudes_at_lambda(b1, 0.0, 1e-6, 1e3);
        ok = roots.size() == 1;
        if (ok) {
            const Field u = equilibrium_profile(1, roots[0], grid);
            Field u2 = step(u, cfg.dt, 0.0, g, grid);
            // ~2.7e-8 at N=200, dt=1e-3: the dt-scaled defect of the
            // analytic equilibrium under the discrete operator
            ok = l2_distance(grid, u, u2) < 5e-8;
        }
        add("equilibrium_fixed_point", ok);

        Field small = sample(grid, [](double) { return 0.1; });
        const double e0 = energy(small, -1.0, g, grid);
        Field stepped = step(small, cfg.dt, -1.0, g, grid);
        add("energy_decrease", energy(stepped, -1.0, g, grid) <= e0 + 1e-12);

        const HemispherePoint p = project(small, grid);
        add("hemisphere_projection",
            std::abs(l2_norm_sq(grid, p.U) + p.z * p.z - 1.0) < 1e-12 &&
                l2_distance(grid, unproject(p, grid), small) < 1e-10);

        const RobinSpectrum inf3 = spectrum_at_infinity(3.0, 4, grid);
        std::vector<double> xi0{1e-3, 1.0, 1e-3, 1e-3};
        const auto closed = xi_flow_closed_form(xi0, 2, inf3, 2.0);
        const auto numeric = xi_flow_rk4(xi0, 2, inf3, 2.0, 1e-3);
        double err = 0.0;
        for (std::size_t i = 0; i < closed.size(); ++i)
            err = std::max(err, std::abs(closed[i] - numeric[i]) / (1.0 + std::abs(closed[i])));
        add("xi_flow_closed_form", err < 1e-6);
    } catch (const std::exception& e) {
        add("unexpected_exception", false, e.what());
    }

    std::string out;
    bool all_ok = true;
    for (const auto& c : checks) {
        out += (c.ok ? "PASS  " : "FAIL  ") + c.name + (c.detail.empty() ? "" : "  " + c.detail) + "\n";
        all_ok = all_ok && c.ok;
    }
    out += all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES present\n";
    write_output(cfg, out);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibria, spectra, blow-up dynamics and compactified attractors of u_t = u_xx - u "
                 "with nonlinear Robin boundary conditions"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalConfig cfg;
    app.add_option("--grid", cfg.grid_cells, "number of grid cells (N >= 32)")
        ->check(CLI::Range(32, 1000000))
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "time step")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for randomized self-checks")->capture_default_str();
    app.add_option("--out", cfg.out, "output path (default: stdout)");
    app.add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    // steklov
    auto* cmd_steklov = app.add_subcommand("steklov", "boundary eigenvalues and eigenfunctions");
    int stk_n = 200;
    std::string stk_norm = "sup";
    cmd_steklov->add_option("--n", stk_n, "grid cells")->capture_default_str();
    cmd_steklov->add_option("--norm", stk_norm, "sup|l2")->check(CLI::IsMember({"sup", "l2"}));

    // spectrum
    auto* cmd_spectrum = app.add_subcommand("spectrum", "Robin eigenvalue problem");
    double sp_gamma = 0.0, sp_lambda = 0.0;
    std::string sp_at = "zero", sp_g = "arctan";
    int sp_n_eigs = 6;
    bool sp_emit = false;
    auto* opt_gamma = cmd_spectrum->add_option("--gamma", sp_gamma, "Robin coefficient");
    auto* opt_lambda = cmd_spectrum->add_option("--lambda", sp_lambda, "parameter lambda");
    cmd_spectrum->add_option("--at", sp_at, "zero|infinity|branch1|branch2")->capture_default_str();
    cmd_spectrum->add_option("--g", sp_g, "boundary nonlinearity")->capture_default_str();
    cmd_spectrum->add_option("--n-eigs", sp_n_eigs, "number of eigenvalues")->capture_default_str();
    cmd_spectrum->add_flag("--emit-eigenfunctions", sp_emit, "append the eigenfunction table");

    // branch
    auto* cmd_branch = app.add_subcommand("branch", "bifurcation-from-infinity diagram");
    std::string br_g = "arctan";
    int br_id = 1, br_steps = 200;
    double br_cmin = 1e-3, br_cmax = 1e3;
    cmd_branch->add_option("--g", br_g, "boundary nonlinearity")->capture_default_str();
    cmd_branch->add_option("--branch", br_id, "1|2")->check(CLI::IsMember({1, 2}))->capture_default_str();
    cmd_branch->add_option("--c-min", br_cmin, "smallest amplitude")->capture_default_str();
    cmd_branch->add_option("--c-max", br_cmax, "largest amplitude")->capture_default_str();
    cmd_branch->add_option("--steps", br_steps, "points per sign")->capture_default_str();

    // simulate
    auto* cmd_simulate = app.add_subcommand("simulate", "time integration of the full problem");
    double sim_lambda = 0.0, sim_tend = 10.0, sim_threshold = 1e4;
    std::string sim_g = "arctan", sim_ic = "zero", sim_scheme = "be";
    int sim_modes = 6;
    cmd_simulate->add_option("--lambda", sim_lambda, "parameter lambda")->required();
    cmd_simulate->add_option("--g", sim_g, "boundary nonlinearity")->capture_default_str();
    cmd_simulate->add_option("--ic", sim_ic, "zero|eigmode:n:amp|branch:i:c|file:<path>")->capture_default_str();
    cmd_simulate->add_option("--t-end", sim_tend, "final time")->capture_default_str();
    cmd_simulate->add_option("--threshold", sim_threshold, "blow-up threshold M")->capture_default_str();
    cmd_simulate->add_option("--n-modes", sim_modes, "modal columns")->capture_default_str();
    cmd_simulate->add_option("--scheme", sim_scheme, "be|cn")->check(CLI::IsMember({"be", "cn"}));

    // compactify
    auto* cmd_compactify = app.add_subcommand("compactify", "projected hemisphere / at-infinity flow");
    double cp_lambda = 0.0, cp_tend = 10.0;
    std::string cp_g = "arctan", cp_ic = "zero";
    bool cp_at_inf = false;
    cmd_compactify->add_option("--lambda", cp_lambda, "parameter lambda")->required();
    cmd_compactify->add_option("--g", cp_g, "boundary nonlinearity")->capture_default_str();
    cmd_compactify->add_option("--ic", cp_ic, "zero|eigmode:n:amp|branch:i:c|file:<path>")->capture_default_str();
    cmd_compactify->add_option("--t-end", cp_tend, "final time")->capture_default_str();
    cmd_compactify->add_flag("--at-infinity", cp_at_inf, "integrate the flow on the sphere at infinity");

    // attractor
    auto* cmd_attractor = app.add_subcommand("attractor", "regime classification and attractor graph");
    double at_lambda = 0.0;
    std::string at_g = "arctan";
    bool at_verify = false;
    cmd_attractor->add_option("--lambda", at_lambda, "parameter lambda")->required();
    cmd_attractor->add_option("--g", at_g, "boundary nonlinearity")->capture_default_str();
    cmd_attractor->add_flag("--verify", at_verify, "attach simulation evidence to every edge");

    // selftest
    auto* cmd_selftest = app.add_subcommand("selftest", "run the built-in oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_steklov->parsed()) return run_steklov_cmd(cfg, stk_n, stk_norm);
        if (cmd_spectrum->parsed())
            return run_spectrum_cmd(cfg, opt_gamma->count() > 0, sp_gamma, opt_lambda->count() > 0,
                                    sp_lambda, sp_at, sp_g, sp_n_eigs, sp_emit);
        if (cmd_branch->parsed()) return run_branch_cmd(cfg, br_g, br_id, br_cmin, br_cmax, br_steps);
        if (cmd_simulate->parsed())
            return run_simulate_cmd(cfg, sim_lambda, sim_g, sim_ic, sim_tend, sim_threshold, sim_modes,
                                    sim_scheme);
        if (cmd_compactify->parsed())
            return run_compactify_cmd(cfg, cp_lambda, cp_g, cp_ic, cp_tend, cp_at_inf);
        if (cmd_attractor->parsed()) return run_attractor_cmd(cfg, at_lambda, at_g, at_verify);
        if (cmd_selftest->parsed()) return run_selftest_cmd(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
