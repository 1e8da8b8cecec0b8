#include "npadi/workflow.hpp"

#include "npadi/errors.hpp"

namespace npadi {

double default_grad_scale(const PhysicalConstants& constants) {
    return 2.0 * constants.coulomb_prefactor;
}

SolvationProblem make_problem(const ChargeSystem& system, const ProblemConfig& config) {
    system.validate();
    const PhysicalConstants constants = PhysicalConstants::at_temperature(config.temperature);
    DielectricModel model{config.kind,
                          config.eps_m,
                          config.eps_s,
                          config.alpha,
                          config.p,
                          config.grad_scale.value_or(default_grad_scale(constants))};
    model.validate();
    const Grid grid = grid_for_system(system, config.h, config.padding);
    ScalarField source = distribute_charges(system, grid, constants);
    ScalarField boundary = dirichlet_boundary(system, grid, config.eps_s, constants);
    return {system, grid, constants, model, std::move(source), std::move(boundary)};
}

ChargeSystem unit_atom() { return ChargeSystem{{Atom{{0.0, 0.0, 0.0}, 1.0, 1.0}}}; }

ScalarField solve_vacuum(const SolvationProblem& problem, double tol) {
    ScalarField phi = coulomb_field(problem.system, problem.grid, 1.0, problem.constants);
    HalfNodeEps unit;
    for (auto& v : unit.values) v.assign(problem.grid.size(), 1.0);
    const LinearSystem sys = assemble_bvp(unit, problem.source, phi);
    solve_linear_system(sys, phi, tol, 50000);
    return phi;
}

ScalarField coulomb_initial_guess(const SolvationProblem& problem) {
    return coulomb_field(problem.system, problem.grid, problem.model.eps_s, problem.constants);
}

EnergyProbe solvation_probe(const SolvationProblem& problem, const ScalarField& phi_vac) {
    return [&problem, &phi_vac](const ScalarField& phi) {
        return electrostatic_solvation(phi, phi_vac, problem.system, problem.constants);
    };
}

AdiRun run_adi(const SolvationProblem& problem, const ScalarField& phi_vac,
               const SolverConfig& config, const NonpolarParams& nonpolar) {
    ScalarField phi0 = coulomb_initial_guess(problem);
    phi0.copy_boundary_from(problem.boundary);
    AdiRun run{solve_steady(std::move(phi0), problem.source, problem.model, config,
                            solvation_probe(problem, phi_vac)),
               {}};
    run.report = energy_report(run.solve.phi, phi_vac, problem.system, problem.model,
                               problem.constants, nonpolar);
    return run;
}

BvpRun run_bvp(const SolvationProblem& problem, const ScalarField& phi_vac,
               const BvpConfig& config, const NonpolarParams& nonpolar) {
    ScalarField phi0 = coulomb_initial_guess(problem);
    phi0.copy_boundary_from(problem.boundary);
    const HalfNodeEps initial = half_node_eps_from_nodal(
        piecewise_dielectric(problem.system, problem.grid, problem.model.eps_m,
                             problem.model.eps_s));
    BvpRun run{solve_bvp(std::move(phi0), initial, problem.source, problem.model, config,
                         solvation_probe(problem, phi_vac)),
               {}};
    run.report = energy_report(run.solve.phi, phi_vac, problem.system, problem.model,
                               problem.constants, nonpolar);
    return run;
}

} // namespace npadi
