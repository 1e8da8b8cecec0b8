#include "npadi/bvp.hpp"

#include "npadi/errors.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <chrono>
#include <cmath>
#include <sstream>

namespace npadi {

void BvpConfig::validate() const {
    if (!(energy_tol > 0.0)) throw ConfigurationError("energy_tol must be positive");
    if (max_outer_iters < 1) throw ConfigurationError("max_outer_iters must be at least 1");
    if (!(inner_solver_tol > 0.0)) throw ConfigurationError("inner_solver_tol must be positive");
    if (inner_max_iters < 1) throw ConfigurationError("inner_max_iters must be at least 1");
}

LinearSystem assemble_bvp(const HalfNodeEps& eps, const ScalarField& source,
                          const ScalarField& boundary) {
    const Grid& g = source.grid();
    if (!(boundary.grid() == g)) throw ConfigurationError("source and boundary grids differ");
    for (const auto& v : eps.values)
        if (v.size() != g.size()) throw ConfigurationError("half-node eps has the wrong size");

    const auto n = static_cast<Eigen::Index>(g.size());
    LinearSystem sys;
    sys.rhs.resize(n);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(g.size() * 7);
    const double h2 = g.h() * g.h();

    for_each_node(g, [&](const Index3& node) {
        const auto row = static_cast<Eigen::Index>(g.linear(node));
        if (g.on_boundary(node)) {
            triplets.emplace_back(row, row, 1.0);
            sys.rhs[row] = boundary[static_cast<std::size_t>(row)];
            return;
        }
        double diag = 0.0;
        for (Axis a : kAxes) {
            const std::ptrdiff_t s = g.stride(a);
            const double e_plus = eps.at(a, static_cast<std::size_t>(row));
            const double e_minus = eps.at(a, static_cast<std::size_t>(row - s));
            triplets.emplace_back(row, row + s, e_plus);
            triplets.emplace_back(row, row - s, e_minus);
            diag -= e_plus + e_minus;
        }
        triplets.emplace_back(row, row, diag);
        sys.rhs[row] = -source[static_cast<std::size_t>(row)] * h2;
    });
    sys.matrix.resize(n, n);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix.makeCompressed();
    return sys;
}

LinearSystem assemble_bvp(const ScalarField& phi_current, const ScalarField& source,
                          const DielectricModel& model, HalfNodeScheme scheme) {
    if (!(phi_current.grid() == source.grid()))
        throw ConfigurationError("potential and source grids differ");
    return assemble_bvp(compute_half_node_eps(phi_current, model, scheme), source, phi_current);
}

InnerSolveStats solve_linear_system(const LinearSystem& system, ScalarField& phi, double tol,
                                    int max_iters) {
    const auto n = static_cast<Eigen::Index>(phi.size());
    if (system.matrix.rows() != n) throw ConfigurationError("system size does not match field");
    Eigen::Map<Eigen::VectorXd> x(phi.values().data(), n);

    Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<double>> solver;
    // The recurrence residual can drift from the true one; aim below the contract.
    solver.setTolerance(0.5 * tol);
    solver.setMaxIterations(max_iters);
    solver.compute(system.matrix);
    const Eigen::VectorXd guess = x;
    x = solver.solveWithGuess(system.rhs, guess);

    const double bnorm = system.rhs.norm();
    const double residual = (system.rhs - system.matrix * x).norm() / (bnorm > 0 ? bnorm : 1.0);
    InnerSolveStats stats{static_cast<int>(solver.iterations()), residual};
    if (!std::isfinite(residual) || residual > tol) {
        std::ostringstream msg;
        msg << "BiCGSTAB stopped after " << stats.iterations
            << " iterations with relative residual " << residual << " (tolerance " << tol << ")";
        throw SolverError(msg.str(), residual);
    }
    return stats;
}

ScalarField piecewise_dielectric(const ChargeSystem& system, const Grid& grid, double eps_m,
                                 double eps_s) {
    system.validate();
    ScalarField eps(grid, eps_s);
    for (const Atom& a : system.atoms) {
        if (a.radius <= 0.0) continue;
        const double r2 = a.radius * a.radius;
        // Only the nodes of the bounding cube of the sphere can be inside it.
        std::array<int, 3> lo{}, hi{};
        for (int d = 0; d < 3; ++d) {
            lo[d] = std::max(0, static_cast<int>(std::floor(
                                    (a.position[d] - a.radius - grid.origin()[d]) / grid.h())));
            hi[d] = std::min(grid.dims()[d] - 1,
                             static_cast<int>(std::ceil(
                                 (a.position[d] + a.radius - grid.origin()[d]) / grid.h())));
        }
        for (int k = lo[2]; k <= hi[2]; ++k)
            for (int j = lo[1]; j <= hi[1]; ++j)
                for (int i = lo[0]; i <= hi[0]; ++i) {
                    const Vec3 r = grid.node_position({i, j, k});
                    const double dx = r[0] - a.position[0];
                    const double dy = r[1] - a.position[1];
                    const double dz = r[2] - a.position[2];
                    if (dx * dx + dy * dy + dz * dz <= r2) eps(i, j, k) = eps_m;
                }
    }
    return eps;
}

BvpResult solve_bvp(ScalarField phi0, const HalfNodeEps& initial_eps, const ScalarField& source,
                    const DielectricModel& model, const BvpConfig& config,
                    const EnergyProbe& probe) {
    config.validate();
    model.validate();
    const auto start = std::chrono::steady_clock::now();
    BvpResult result{std::move(phi0), 0, 0, {}, 0.0, false, 0.0};
    ScalarField& phi = result.phi;
    const ScalarField boundary = phi;

    HalfNodeEps eps = initial_eps;
    double last_energy = 0.0;
    ScalarField last_field = phi;

    for (int outer = 1; outer <= config.max_outer_iters; ++outer) {
        const LinearSystem sys = assemble_bvp(eps, source, boundary);
        const InnerSolveStats stats =
            solve_linear_system(sys, phi, config.inner_solver_tol, config.inner_max_iters);
        result.outer_iterations = outer;
        result.inner_iterations += stats.iterations;

        double delta;
        if (probe) {
            const double energy = probe(phi);
            result.energy_trace.push_back(energy);
            delta = std::abs(energy - last_energy);
            last_energy = energy;
        } else {
            delta = 0.0;
            for (std::size_t l = 0; l < phi.size(); ++l)
                delta = std::max(delta, std::abs(phi[l] - last_field[l]));
            last_field = phi;
            result.energy_trace.push_back(delta);
        }
        result.final_energy_delta = delta;

        // With a field-independent eps the first solve is already the fixed point.
        if (model.is_linear()) {
            result.final_energy_delta = 0.0;
            result.converged = true;
            break;
        }
        if (outer > 1 && delta < config.energy_tol) {
            result.converged = true;
            break;
        }
        compute_half_node_eps(phi, model, config.scheme, eps);
    }
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace npadi
