#include "npadi/adi.hpp"

#include "npadi/errors.hpp"
#include "npadi/tridiag.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace npadi {

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigurationError("dt must be positive");
    if (t_final.has_value() == max_steps.has_value())
        throw ConfigurationError("exactly one of t_final and max_steps must be set");
    if (t_final && !(*t_final > 0.0)) throw ConfigurationError("t_final must be positive");
    if (max_steps && *max_steps < 1) throw ConfigurationError("max_steps must be at least 1");
    if (!(energy_tol > 0.0)) throw ConfigurationError("energy_tol must be positive");
    if (monitor_every < 1) throw ConfigurationError("monitor_every must be at least 1");
}

long SolverConfig::total_steps() const {
    validate();
    if (max_steps) return *max_steps;
    return static_cast<long>(std::ceil(*t_final / dt - 1e-9));
}

double apply_delta_sq(const ScalarField& phi, const DielectricModel& model,
                      HalfNodeScheme scheme, Axis axis, const Index3& n) {
    const Grid& g = phi.grid();
    g.check_index(n);
    if (g.on_boundary(n)) throw StencilError("delta^2 is only defined at interior nodes");
    const Index3 left = n.shifted(axis, -1);
    const double eps_plus = half_node_eps(phi, model, scheme, axis, n);
    const double eps_minus = half_node_eps(phi, model, scheme, axis, left);
    const double c = phi(n);
    return (eps_plus * (phi(n.shifted(axis, 1)) - c) + eps_minus * (phi(left) - c)) /
           (g.h() * g.h());
}

AdiStepper::AdiStepper(const Grid& grid, const DielectricModel& model, HalfNodeScheme scheme)
    : grid_(grid), model_(model), scheme_(scheme) {
    model_.validate();
    const std::size_t n = grid_.size();
    dyy_.assign(n, 0.0);
    dzz_.assign(n, 0.0);
    rhs_.assign(n, 0.0);
    stage_a_.assign(n, 0.0);
    stage_b_.assign(n, 0.0);
    for (Axis axis : kAxes) {
        const int a = static_cast<int>(axis);
        const Axis b = kAxes[(a + 1) % 3];
        const Axis c = kAxes[(a + 2) % 3];
        auto& starts = line_starts_[a];
        for (int ic = 1; ic < grid_.dim(c) - 1; ++ic)
            for (int ib = 1; ib < grid_.dim(b) - 1; ++ib) {
                Index3 node{};
                node[b] = ib;
                node[c] = ic;
                starts.push_back(grid_.linear(node));
            }
    }
}

void AdiStepper::delta_sq_field(const ScalarField& phi, Axis axis,
                                std::vector<double>& out) const {
    const std::ptrdiff_t s = grid_.stride(axis);
    const auto& eps = eps_.values[static_cast<int>(axis)];
    const double inv_h2 = 1.0 / (grid_.h() * grid_.h());
    const double* p = phi.values().data();
    for_each_interior(grid_, [&](const Index3& n) {
        const std::size_t l = grid_.linear(n);
        out[l] = (eps[l] * (p[l + s] - p[l]) + eps[l - s] * (p[l - s] - p[l])) * inv_h2;
    });
}

void AdiStepper::sweep(Axis axis, const std::vector<double>& rhs, const ScalarField& boundary,
                       double dt, std::vector<double>& out) {
    const std::ptrdiff_t s = grid_.stride(axis);
    const std::size_t m = static_cast<std::size_t>(grid_.dim(axis) - 2);
    const auto& eps = eps_.values[static_cast<int>(axis)];
    const double r = dt / (grid_.h() * grid_.h());
    const double* bnd = boundary.values().data();
    const auto& starts = line_starts_[static_cast<int>(axis)];
    const auto count = static_cast<std::ptrdiff_t>(starts.size());

    // Lines are independent, so the result does not depend on the thread count.
#pragma omp parallel
    {
        std::vector<double> buf(6 * m);
        std::span<double> lower(buf.data(), m - 1), diag(buf.data() + m, m),
            upper(buf.data() + 2 * m, m - 1), line_rhs(buf.data() + 3 * m, m),
            x(buf.data() + 4 * m, m), scratch(buf.data() + 5 * m, m);
#pragma omp for schedule(static)
        for (std::ptrdiff_t li = 0; li < count; ++li) {
            const std::size_t l0 = starts[static_cast<std::size_t>(li)];
            for (std::size_t q = 0; q < m; ++q) {
                const std::size_t l = l0 + (q + 1) * s;
                const double e_minus = eps[l - s];
                const double e_plus = eps[l];
                diag[q] = 1.0 + r * (e_minus + e_plus);
                if (q > 0) lower[q - 1] = -r * e_minus;
                if (q + 1 < m) upper[q] = -r * e_plus;
                line_rhs[q] = rhs[l];
            }
            line_rhs[0] += r * eps[l0] * bnd[l0];
            const std::size_t last = l0 + (m + 1) * s;
            line_rhs[m - 1] += r * eps[last - s] * bnd[last];
            solve_tridiagonal(lower, diag, upper, line_rhs, x, scratch);
            out[l0] = bnd[l0];
            out[last] = bnd[last];
            for (std::size_t q = 0; q < m; ++q) out[l0 + (q + 1) * s] = x[q];
        }
    }
}

void AdiStepper::step(ScalarField& phi, const ScalarField& source, double dt) {
    if (!(phi.grid() == grid_) || !(source.grid() == grid_))
        throw ConfigurationError("field grid does not match the stepper grid");
    if (!(dt > 0.0)) throw ConfigurationError("dt must be positive");

    compute_half_node_eps(phi, model_, scheme_, eps_);
    delta_sq_field(phi, Axis::Y, dyy_);
    delta_sq_field(phi, Axis::Z, dzz_);

    const double* p = phi.values().data();
    const double* q = source.values().data();
    for_each_interior(grid_, [&](const Index3& n) {
        const std::size_t l = grid_.linear(n);
        rhs_[l] = p[l] + dt * (dyy_[l] + dzz_[l]) + dt * q[l];
    });
    // Boundary-line values of stage buffers come from phi; only interior lines are swept.
    stage_a_.assign(p, p + grid_.size());
    sweep(Axis::X, rhs_, phi, dt, stage_a_);

    for_each_interior(grid_, [&](const Index3& n) {
        const std::size_t l = grid_.linear(n);
        rhs_[l] = stage_a_[l] - dt * dyy_[l];
    });
    stage_b_.assign(p, p + grid_.size());
    sweep(Axis::Y, rhs_, phi, dt, stage_b_);

    for_each_interior(grid_, [&](const Index3& n) {
        const std::size_t l = grid_.linear(n);
        rhs_[l] = stage_b_[l] - dt * dzz_[l];
    });
    std::vector<double>& out = stage_a_;
    out.assign(p, p + grid_.size());
    sweep(Axis::Z, rhs_, phi, dt, out);

    ++steps_;
    double max_mag = 0.0;
    bool finite = true;
    for (double v : out) {
        if (!std::isfinite(v)) {
            finite = false;
            continue;
        }
        max_mag = std::max(max_mag, std::abs(v));
    }
    if (!finite) {
        std::ostringstream msg;
        msg << "ADI step " << steps_ << " produced non-finite values (max finite |phi| = "
            << max_mag << ")";
        throw BlowUpError(msg.str(), steps_, max_mag);
    }
    std::copy(out.begin(), out.end(), phi.values().begin());
}

ScalarField adi_step(const ScalarField& phi_n, const ScalarField& source,
                     const DielectricModel& model, const SolverConfig& config) {
    config.validate();
    AdiStepper stepper(phi_n.grid(), model, config.scheme);
    ScalarField next = phi_n;
    stepper.step(next, source, config.dt);
    return next;
}

SteadyStateResult solve_steady(ScalarField phi0, const ScalarField& source,
                               const DielectricModel& model, const SolverConfig& config,
                               const EnergyProbe& probe) {
    config.validate();
    if (!phi0.all_finite()) throw ArgumentError("initial field contains non-finite values");
    const auto start = std::chrono::steady_clock::now();
    const long total = config.total_steps();

    AdiStepper stepper(phi0.grid(), model, config.scheme);
    SteadyStateResult result{std::move(phi0), 0, 0.0, false, 0.0, {}};
    ScalarField& phi = result.phi;

    double last_energy = probe ? probe(phi) : 0.0;
    ScalarField last_field = probe ? ScalarField(phi.grid()) : phi;
    result.trace.push_back({0, 0.0, probe ? last_energy : 0.0, phi.max_abs()});
    bool have_delta = false;

    for (long n = 1; n <= total; ++n) {
        stepper.step(phi, source, config.dt);
        result.steps_taken = n;
        if (n % config.monitor_every != 0 && n != total) continue;

        double delta;
        double monitored;
        if (probe) {
            monitored = probe(phi);
            delta = std::abs(monitored - last_energy);
            last_energy = monitored;
        } else {
            delta = 0.0;
            for (std::size_t l = 0; l < phi.size(); ++l)
                delta = std::max(delta, std::abs(phi[l] - last_field[l]));
            last_field = phi;
            monitored = delta;
        }
        result.trace.push_back({n, n * config.dt, monitored, phi.max_abs()});
        result.final_energy_delta = delta;
        have_delta = true;
        if (delta <= config.energy_tol && config.stop_on_convergence) break;
    }
    result.converged = have_delta && result.final_energy_delta <= config.energy_tol;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace npadi
