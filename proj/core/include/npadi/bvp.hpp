#pragma once

#include "npadi/adi.hpp"
#include "npadi/charge_source.hpp"
#include "npadi/dielectric.hpp"
#include "npadi/grid.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace npadi {

struct BvpConfig {
    double energy_tol = 0.01; ///< kcal/mol between successive outer iterations
    int max_outer_iters = 100;
    double inner_solver_tol = 1e-9; ///< relative residual ||b - A x|| / ||b||
    int inner_max_iters = 20000;
    HalfNodeScheme scheme = HalfNodeScheme::EpsII;

    void validate() const;
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Seven-point system in node-linear order. Interior rows are
///   sum_axis [eps_{+} (phi_{+} - phi) + eps_{-} (phi_{-} - phi)] = -Q h^2
/// and boundary rows are identity with the Dirichlet value on the right.
struct LinearSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
};

/// Assembles with prescribed half-node permittivities; `boundary` supplies the
/// Dirichlet data (only its boundary nodes are read).
LinearSystem assemble_bvp(const HalfNodeEps& eps, const ScalarField& source,
                          const ScalarField& boundary);

/// Assembles with eps frozen from `phi_current`, which also supplies the Dirichlet data.
LinearSystem assemble_bvp(const ScalarField& phi_current, const ScalarField& source,
                          const DielectricModel& model,
                          HalfNodeScheme scheme = HalfNodeScheme::EpsII);

struct InnerSolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// BiCGSTAB with a Jacobi preconditioner, warm-started from `phi`, which receives
/// the solution. Throws SolverError when the relative residual stays above `tol`.
InnerSolveStats solve_linear_system(const LinearSystem& system, ScalarField& phi, double tol,
                                    int max_iters);

/// Nodal permittivity eps_m inside any atom's radius and eps_s elsewhere.
ScalarField piecewise_dielectric(const ChargeSystem& system, const Grid& grid, double eps_m,
                                 double eps_s);

struct BvpResult {
    ScalarField phi;
    int outer_iterations = 0;
    long inner_iterations = 0;
    std::vector<double> energy_trace;
    double final_energy_delta = 0.0;
    bool converged = false;
    double wall_time = 0.0;
};

/// Alternating iteration: solve the linear problem with eps frozen, recompute eps
/// from the new potential, repeat until the probe changes by less than energy_tol.
/// Without a probe the max-norm field change is monitored instead.
/// `phi0` carries the Dirichlet data and the first inner initial guess.
BvpResult solve_bvp(ScalarField phi0, const HalfNodeEps& initial_eps, const ScalarField& source,
                    const DielectricModel& model, const BvpConfig& config,
                    const EnergyProbe& probe = {});

} // namespace npadi
