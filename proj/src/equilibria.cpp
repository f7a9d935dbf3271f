#include "steklov/equilibria.hpp"

#include <cmath>
#include <stdexcept>

#include "steklov/parallel.hpp"

namespace steklov {

EquilibriumBranch make_branch(int branch_id, const BoundaryNonlinearity& g) {
    if (branch_id == 1) return {1, 1.0 + kEuler, steklov_sigma1(), g};
    if (branch_id == 2) return {2, kEuler - 1.0, steklov_sigma2(), g};
    throw std::invalid_argument("branch_id must be 1 or 2");
}

LambdaOfAmplitude lambda_of_amplitude(const EquilibriumBranch& branch, double c) {
    if (c == 0.0) return {branch.base_sigma - branch.g.deriv(0.0), true};
    const double s = branch.scale_factor * c;
    return {branch.base_sigma - branch.g.eval(s) / s, false};
}

std::vector<double> amplitudes_at_lambda(const EquilibriumBranch& branch, double lambda, double c_lo,
                                         double c_hi, int scan_points) {
    if (!(c_lo > 0.0) || !(c_hi > c_lo)) throw std::invalid_argument("amplitude range must satisfy 0 < c_lo < c_hi");
    const auto f = [&](double c) { return lambda_of_amplitude(branch, c).lambda - lambda; };

    std::vector<double> roots;
    const double ratio = std::log(c_hi / c_lo);
    double prev = c_lo, fprev = f(prev);
    for (int i = 1; i <= scan_points; ++i) {
        const double c = c_lo * std::exp(ratio * i / scan_points);
        const double fc = f(c);
        if (fprev == 0.0) roots.push_back(prev);
        if ((fprev < 0.0) != (fc < 0.0) && fprev != 0.0) {
            double a = prev, b = c, fa = fprev;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                if (m == a || m == b) break;
                const double fm = f(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = c;
        fprev = fc;
    }
    return roots;
}

Field equilibrium_profile(int branch_id, double c, const Grid& grid) {
    Field u;
    if (branch_id == 1) {
        u = sample(grid, [](double x) { return std::exp(x) + std::exp(1.0 - x); });
    } else if (branch_id == 2) {
        u = sample(grid, [](double x) { return std::exp(x) - std::exp(1.0 - x); });
    } else {
        throw std::invalid_argument("branch_id must be 1 or 2");
    }
    enforce_parity(u);
    scale(u, c);
    return u;
}

std::vector<BifurcationPoint> bifurcation_diagram(const BoundaryNonlinearity& g,
                                                  const std::vector<int>& branches,
                                                  const DiagramOptions& opts) {
    if (opts.steps < 2) throw std::invalid_argument("diagram needs at least 2 steps");
    struct Task {
        int branch_id;
        double c;
    };
    std::vector<Task> tasks;
    for (int id : branches) {
        make_branch(id, g);  // validates id
        const double ratio = std::log(opts.c_max / opts.c_min);
        for (int i = 0; i < opts.steps; ++i) {
            const double c = opts.c_min * std::exp(ratio * i / (opts.steps - 1));
            tasks.push_back({id, c});
            tasks.push_back({id, -c});
        }
    }

    const Grid grid(opts.grid_cells);
    std::vector<std::optional<BifurcationPoint>> slots(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        const Task& t = tasks[i];
        const EquilibriumBranch branch = make_branch(t.branch_id, g);
        BifurcationPoint p;
        p.branch_id = t.branch_id;
        p.amplitude = t.c;
        p.lambda = lambda_of_amplitude(branch, t.c).lambda;
        if (p.lambda < opts.lambda_min || p.lambda > opts.lambda_max) return;
        if (opts.with_stability) {
            try {
                const Field u = equilibrium_profile(t.branch_id, t.c, grid);
                const RobinSpectrum spec = linearized_spectrum_at(u, p.lambda, g, 3, grid);
                p.morse = morse_index(spec);
                p.stability =
                    p.morse == 0 ? BifurcationPoint::Stability::stable : BifurcationPoint::Stability::saddle;
            } catch (const std::exception&) {
                p.stability = BifurcationPoint::Stability::unknown;
                p.morse = -1;
            }
        }
        slots[i] = p;
    });

    std::vector<BifurcationPoint> out;
    for (const auto& s : slots)
        if (s) out.push_back(*s);
    return out;
}

}  // namespace steklov
