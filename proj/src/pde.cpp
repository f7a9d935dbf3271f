#include "steklov/pde.hpp"

#include <cmath>
#include <stdexcept>

namespace steklov {

RobinStepper::RobinStepper(const Grid& grid, double lambda, BoundaryNonlinearity g, double dt,
                           TimeScheme scheme)
    : grid_(grid), lambda_(lambda), g_(std::move(g)), dt_(dt), scheme_(scheme) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (dt > dt_max(grid)) throw std::invalid_argument("dt exceeds the stability bound dt_max = h");

    const std::size_t n = static_cast<std::size_t>(grid.n_nodes());
    const double h = grid.h;
    const double ih2 = 1.0 / (h * h);

    a_sub_.assign(n, ih2);
    a_sup_.assign(n, ih2);
    a_diag_.assign(n, -2.0 * ih2 - 1.0);
    // ghost-node boundary rows: u_xx(0) = 2(u_1 - u_0)/h^2 + (2 lambda/h) u_0
    // plus the explicit (2/h) g(u_0) forcing
    a_diag_.front() = -2.0 * ih2 + 2.0 * lambda / h - 1.0;
    a_diag_.back() = a_diag_.front();
    a_sup_.front() = 2.0 * ih2;
    a_sub_.back() = 2.0 * ih2;
    a_sub_.front() = 0.0;
    a_sup_.back() = 0.0;

    const double theta = scheme == TimeScheme::backward_euler ? 1.0 : 0.5;
    lhs_.sub.resize(n);
    lhs_.diag.resize(n);
    lhs_.sup.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        lhs_.sub[i] = -theta * dt * a_sub_[i];
        lhs_.diag[i] = 1.0 - theta * dt * a_diag_[i];
        lhs_.sup[i] = -theta * dt * a_sup_[i];
    }
}

void RobinStepper::advance(Field& u) const {
    const std::size_t n = u.size();
    if (n != static_cast<std::size_t>(grid_.n_nodes())) throw std::invalid_argument("field does not match grid");
    const double h = grid_.h;

    std::vector<double> rhs(n);
    if (scheme_ == TimeScheme::backward_euler) {
        for (std::size_t i = 0; i < n; ++i) rhs[i] = u.values[i];
    } else {
        // (I + dt/2 A) u, grouped so the expression mirrors under index
        // reversal (keeps even/odd data exactly in its symmetry class)
        const double c = 0.5 * dt_;
        rhs[0] = u.values[0] + c * (a_diag_[0] * u.values[0] + a_sup_[0] * u.values[1]);
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs[i] = u.values[i] +
                     c * (a_diag_[i] * u.values[i] + (a_sub_[i] * u.values[i - 1] + a_sup_[i] * u.values[i + 1]));
        rhs[n - 1] = u.values[n - 1] + c * (a_diag_[n - 1] * u.values[n - 1] + a_sub_[n - 1] * u.values[n - 2]);
    }
    rhs[0] += dt_ * (2.0 / h) * g_.eval(u.values[0]);
    rhs[n - 1] += dt_ * (2.0 / h) * g_.eval(u.values[n - 1]);

    std::vector<double> next = solve_tridiag(lhs_, rhs);
    u.values.swap(next);
    if (!all_finite(u)) throw std::runtime_error("numerical overflow");
}

Field step(const Field& u, double dt, double lambda, const BoundaryNonlinearity& g, const Grid& grid,
           TimeScheme scheme) {
    RobinStepper stepper(grid, lambda, g, dt, scheme);
    Field out = u;
    stepper.advance(out);
    return out;
}

double energy(const Field& u, double lambda, const BoundaryNonlinearity& g, const Grid& grid) {
    const std::size_t n = u.size();
    const double h = grid.h;
    Field ux(n);
    ux.values[0] = (-3.0 * u.values[0] + 4.0 * u.values[1] - u.values[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) ux.values[i] = (u.values[i + 1] - u.values[i - 1]) / (2.0 * h);
    ux.values[n - 1] = (3.0 * u.values[n - 1] - 4.0 * u.values[n - 2] + u.values[n - 3]) / (2.0 * h);

    const double interior = 0.5 * (l2_norm_sq(grid, ux) + l2_norm_sq(grid, u));
    const auto boundary_potential = [&](double v) { return lambda * v * v / 2.0 + g.primitive(v); };
    return interior - boundary_potential(u.values.front()) - boundary_potential(u.values.back());
}

TrajectoryRecord simulate(const Field& u0, double lambda, const BoundaryNonlinearity& g, const Grid& grid,
                          const SimulateOptions& opts) {
    TrajectoryRecord rec;
    rec.lambda = lambda;
    rec.grid = grid;
    rec.basis = spectrum_at_infinity(lambda, opts.n_modes, grid);

    RobinStepper stepper(grid, lambda, g, opts.dt, opts.scheme);

    const long sample_every = std::max<long>(1, std::lround(opts.sample_interval / opts.dt));
    const long total_steps = std::lround(opts.t_end / opts.dt);

    Field u = u0;
    Field prev_sample = u0;
    bool converged_emitted = false;

    const auto record_sample = [&](double t) {
        rec.times.push_back(t);
        rec.l2_norms.push_back(l2_norm(grid, u));
        rec.energies.push_back(energy(u, lambda, g, grid));
        std::vector<double> coeffs(rec.basis.eigenfunctions.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            coeffs[k] = trap_dot(grid, u, rec.basis.eigenfunctions[k]);
        rec.modal.push_back(std::move(coeffs));
    };

    record_sample(0.0);
    long step_idx = 0;
    while (step_idx < total_steps) {
        stepper.advance(u);
        ++step_idx;
        const double t = step_idx * opts.dt;
        const bool at_sample = (step_idx % sample_every == 0) || step_idx == total_steps;
        if (!at_sample) continue;

        record_sample(t);
        const double norm = rec.l2_norms.back();
        if (norm >= opts.blowup_threshold) {
            rec.events.push_back({"blowup_threshold", t, norm});
            break;
        }
        const double elapsed = static_cast<double>(sample_every) * opts.dt;
        const double rate = l2_distance(grid, u, prev_sample) / (elapsed * (1.0 + norm));
        prev_sample = u;
        if (!converged_emitted && rate < 1e-8) {
            rec.events.push_back({"converged", t, norm});
            converged_emitted = true;
        }
        if (rate < 5e-13) {
            rec.events.push_back({"steady", t, norm});
            if (opts.stop_when_steady) break;
        }
    }

    rec.final_state = u;
    rec.final_time = rec.times.back();
    return rec;
}

double fit_growth_rate(const TrajectoryRecord& record, int n, double t0, double t1) {
    if (n < 1 || static_cast<std::size_t>(n) > record.basis.eigenfunctions.size())
        throw std::invalid_argument("mode index out of range");
    std::vector<double> ts, ys;
    int sign = 0;
    for (std::size_t i = 0; i < record.times.size(); ++i) {
        const double t = record.times[i];
        if (t < t0 || t > t1) continue;
        const double un = record.modal[i][static_cast<std::size_t>(n - 1)];
        if (un == 0.0) throw std::runtime_error("mode not in growth regime");
        const int s = un > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) throw std::runtime_error("mode not in growth regime");
        ts.push_back(t);
        ys.push_back(std::log(std::abs(un)));
    }
    if (ts.size() < 3) throw std::runtime_error("mode not in growth regime");

    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double m = static_cast<double>(ts.size());
    const double slope = (m * sty - st * sy) / (m * stt - st * st);
    if (slope <= 0.0) throw std::runtime_error("mode not in growth regime");
    return slope;
}

BlowupClassification detect_blowup(const TrajectoryRecord& record, const RobinSpectrum& inf_spec,
                                   double tol) {
    BlowupClassification out;
    if (!record.has_event("blowup_threshold")) return out;
    if (inf_spec.eigenfunctions.size() < 2) throw std::invalid_argument("need at least two modes to classify");
    if (inf_spec.grid.n_cells != record.grid.n_cells)
        throw std::invalid_argument("spectrum grid does not match the trajectory grid");

    const Grid& grid = record.grid;
    const double r = l2_norm(grid, record.final_state);
    const auto distance_to = [&](int mode, int iota) {
        // || u/r - iota*phi ||^2 = 2 - 2*iota*<u,phi>/r for unit phi
        const double un = trap_dot(grid, record.final_state, inf_spec.eigenfunctions[mode - 1]);
        return std::sqrt(std::max(0.0, 2.0 - 2.0 * iota * un / r));
    };
    const double d1p = distance_to(1, +1), d1m = distance_to(1, -1);
    const double d2p = distance_to(2, +1), d2m = distance_to(2, -1);
    out.distance_mode1 = std::min(d1p, d1m);
    out.distance_mode2 = std::min(d2p, d2m);

    // ties within 1e-3 resolve to the faster mode N=1
    if (out.distance_mode1 <= out.distance_mode2 + 1e-3) {
        out.mode = 1;
        out.iota = d1p <= d1m ? +1 : -1;
        out.final_distance = out.distance_mode1;
    } else {
        out.mode = 2;
        out.iota = d2p <= d2m ? +1 : -1;
        out.final_distance = out.distance_mode2;
    }
    out.blowup = true;
    if (out.final_distance > tol)
        throw std::runtime_error("unclassified blow-up direction (d1=" + std::to_string(out.distance_mode1) +
                                 ", d2=" + std::to_string(out.distance_mode2) + ")");
    return out;
}

std::vector<double> modal_residual(const TrajectoryRecord& record, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > record.basis.eigenfunctions.size())
        throw std::invalid_argument("mode index out of range");
    const std::size_t m = record.times.size();
    const double mu = record.basis.eigenvalues[static_cast<std::size_t>(n - 1)];
    std::vector<double> r(m, 0.0);
    if (m < 2) return r;
    const auto un = [&](std::size_t i) { return record.modal[i][static_cast<std::size_t>(n - 1)]; };
    for (std::size_t i = 0; i < m; ++i) {
        double dudt;
        if (i == 0)
            dudt = (un(1) - un(0)) / (record.times[1] - record.times[0]);
        else if (i + 1 == m)
            dudt = (un(m - 1) - un(m - 2)) / (record.times[m - 1] - record.times[m - 2]);
        else
            dudt = (un(i + 1) - un(i - 1)) / (record.times[i + 1] - record.times[i - 1]);
        r[i] = dudt - mu * un(i);
    }
    return r;
}

}  // namespace steklov
