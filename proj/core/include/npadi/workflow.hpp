#pragma once

#include "npadi/adi.hpp"
#include "npadi/bvp.hpp"
#include "npadi/charge_source.hpp"
#include "npadi/dielectric.hpp"
#include "npadi/solvation.hpp"

#include <optional>

namespace npadi {

/// Physical and discretisation parameters of a solvation run.
struct ProblemConfig {
    double h = 0.25;        ///< A
    double padding = 8.0;   ///< A added around the atom-centre bounding box
    double temperature = 298.15;
    DielectricKind kind = DielectricKind::Rational;
    double eps_m = 1.0;
    double eps_s = 80.0;
    double alpha = 40.0;
    int p = 1;
    /// Divisor of |grad phi|^2; defaults to default_grad_scale(constants).
    std::optional<double> grad_scale;
};

/// Divisor used when none is configured: 2 l_B, twice the vacuum Bjerrum length.
///
/// With phi in k_B T / e_c and lengths in A this equals |E|^2 / (2 k_B T) in Gaussian
/// units, which makes alpha a polarisability volume in A^3.
double default_grad_scale(const PhysicalConstants& constants);

/// Everything the solvers need for one molecule on one grid.
struct SolvationProblem {
    ChargeSystem system;
    Grid grid;
    PhysicalConstants constants;
    DielectricModel model;
    ScalarField source;   ///< trilinear charge density with the 4 pi prefactor
    ScalarField boundary; ///< Dirichlet data for eps_s (interior zero)
};

SolvationProblem make_problem(const ChargeSystem& system, const ProblemConfig& config);

/// Single unit charge of radius 1 A at the origin.
ChargeSystem unit_atom();

/// Reference potential with eps = 1 everywhere (vacuum Dirichlet data), from one
/// tight linear solve on the same grid and charge spreading as the solvated run.
ScalarField solve_vacuum(const SolvationProblem& problem, double tol = 1e-11);

/// Coulomb superposition with eps_s at every node, boundary included.
ScalarField coulomb_initial_guess(const SolvationProblem& problem);

/// Monitors dG_p = G_p - G_0 against a fixed vacuum potential.
EnergyProbe solvation_probe(const SolvationProblem& problem, const ScalarField& phi_vac);

struct AdiRun {
    SteadyStateResult solve;
    EnergyReport report;
};

AdiRun run_adi(const SolvationProblem& problem, const ScalarField& phi_vac,
               const SolverConfig& config, const NonpolarParams& nonpolar = {});

struct BvpRun {
    BvpResult solve;
    EnergyReport report;
};

/// Alternating-iteration reference solve starting from the piecewise eps_m / eps_s profile.
BvpRun run_bvp(const SolvationProblem& problem, const ScalarField& phi_vac,
               const BvpConfig& config, const NonpolarParams& nonpolar = {});

} // namespace npadi
