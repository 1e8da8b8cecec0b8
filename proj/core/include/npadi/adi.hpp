#pragma once

#include "npadi/dielectric.hpp"
#include "npadi/grid.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace npadi {

/// Pseudo-time integration controls.
struct SolverConfig {
    double dt = 0.1;
    /// Exactly one of t_final / max_steps governs the run length.
    std::optional<double> t_final = 5.0;
    std::optional<long> max_steps;
    /// Successive-monitor tolerance: kcal/mol with an energy probe, field units without.
    double energy_tol = 0.01;
    HalfNodeScheme scheme = HalfNodeScheme::EpsI;
    int monitor_every = 1;
    /// Stop at the first monitor that meets energy_tol instead of running to the end.
    bool stop_on_convergence = true;

    void validate() const;
    long total_steps() const;
};

struct TracePoint {
    long step = 0;
    double time = 0.0;
    double energy = 0.0; ///< probe value, or the field change norm without a probe
    double max_abs_phi = 0.0;
};

struct SteadyStateResult {
    ScalarField phi;
    long steps_taken = 0;
    double final_energy_delta = 0.0;
    bool converged = false;
    double wall_time = 0.0; ///< seconds
    std::vector<TracePoint> trace;
};

/// delta^2 along `axis` at interior node n:
///   (1/h^2) [eps_{+1/2} (phi_{+1} - phi) + eps_{-1/2} (phi_{-1} - phi)]
/// with half-node eps from `scheme` evaluated on `phi`. Throws StencilError on a boundary node.
double apply_delta_sq(const ScalarField& phi, const DielectricModel& model,
                      HalfNodeScheme scheme, Axis axis, const Index3& n);

/// Douglas-Rachford ADI stepper for  phi_t = div(eps(|grad phi|^2) grad phi) + Q.
///
/// Each step freezes eps at the current field and performs three sweeps of
/// independent tridiagonal line solves (x, then y, then z):
///   (1 - dt dxx) phi*   = [1 + dt (dyy + dzz)] phi^n + dt Q
///   (1 - dt dyy) phi**  = phi*  - dt dyy phi^n
///   (1 - dt dzz) phi^n+1 = phi** - dt dzz phi^n
/// Boundary nodes of every stage carry the boundary values of the incoming field.
/// Work buffers are owned by the stepper and reused across steps.
class AdiStepper {
public:
    AdiStepper(const Grid& grid, const DielectricModel& model, HalfNodeScheme scheme);

    /// Advances `phi` in place. Throws BlowUpError if the result is not finite.
    void step(ScalarField& phi, const ScalarField& source, double dt);

    long steps_taken() const noexcept { return steps_; }
    const HalfNodeEps& frozen_eps() const noexcept { return eps_; }
    const DielectricModel& model() const noexcept { return model_; }
    HalfNodeScheme scheme() const noexcept { return scheme_; }

private:
    void delta_sq_field(const ScalarField& phi, Axis axis, std::vector<double>& out) const;
    void sweep(Axis axis, const std::vector<double>& rhs, const ScalarField& boundary,
               double dt, std::vector<double>& out);

    Grid grid_;
    DielectricModel model_;
    HalfNodeScheme scheme_;
    long steps_ = 0;

    HalfNodeEps eps_;
    std::vector<double> dyy_, dzz_, rhs_, stage_a_, stage_b_;
    std::array<std::vector<std::size_t>, 3> line_starts_; // interior lines per axis
};

/// One step from phi_n; convenience wrapper around AdiStepper.
ScalarField adi_step(const ScalarField& phi_n, const ScalarField& source,
                     const DielectricModel& model, const SolverConfig& config);

/// Maps a field to the monitored energy (kcal/mol).
using EnergyProbe = std::function<double(const ScalarField&)>;

/// Integrates to steady state. Without a probe, the max-norm change of the field
/// between monitors is compared with energy_tol instead.
SteadyStateResult solve_steady(ScalarField phi0, const ScalarField& source,
                               const DielectricModel& model, const SolverConfig& config,
                               const EnergyProbe& probe = {});

} // namespace npadi
