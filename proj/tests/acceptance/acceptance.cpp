// Acceptance runner: one PASS/FAIL line per criterion, details indented below it.
// Usage: npadi_acceptance [criterion numbers...]   (default: all)

#include "cli.hpp"

#include "npadi/adi.hpp"
#include "npadi/bvp.hpp"
#include "npadi/dielectric.hpp"
#include "npadi/errors.hpp"
#include "npadi/mms.hpp"
#include "npadi/tridiag.hpp"
#include "npadi/workflow.hpp"

#include <Eigen/Dense>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef NPADI_DATA_DIR
#define NPADI_DATA_DIR "data"
#endif

using namespace npadi;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        notes.push_back(std::string(ok ? "ok   " : "MISS ") + what);
        pass = pass && ok;
    }
    void info(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool within_rel(double value, double ref, double rel) {
    return std::abs(value - ref) <= rel * std::abs(ref);
}

// ---- 1-3: manufactured benchmark ------------------------------------------

Outcome spatial_convergence() {
    Outcome o;
    const mms::BenchmarkSpec spec;
    const std::vector<double> hs{kPi / 4, kPi / 8, kPi / 16, kPi / 32};
    const std::array<double, 4> ref_linf{8.15e-2, 1.88e-2, 4.65e-3, 1.18e-3};
    const auto rows = mms::run_spatial_study(spec, HalfNodeScheme::EpsI, 0.001, hs);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.failed) {
            o.require(false, fmt("h=pi/%d failed: %s", 4 << i, r.failure.c_str()));
            continue;
        }
        o.require(within_rel(r.errors.linf, ref_linf[i], 0.15),
                  fmt("h=pi/%-2d Linf %.3e (reference %.2e, within 15%%)", 4 << i, r.errors.linf,
                      ref_linf[i]));
        o.info(fmt("h=pi/%-2d L2 %.3e, wall %.1f s", 4 << i, r.errors.l2, r.wall_time));
        if (r.linf_order)
            o.require(*r.linf_order >= 1.8 && *r.linf_order <= 2.2,
                      fmt("h=pi/%-2d Linf order %.3f in [1.8, 2.2]", 4 << i, *r.linf_order));
        if (r.l2_order)
            o.require(*r.l2_order >= 1.8 && *r.l2_order <= 2.2,
                      fmt("h=pi/%-2d L2 order %.3f in [1.8, 2.2]", 4 << i, *r.l2_order));
    }
    return o;
}

// The h = pi/48 temporal study feeds both criterion 2 and criterion 3.
const mms::TemporalStudy& temporal_study() {
    static const mms::TemporalStudy study = [] {
        const mms::BenchmarkSpec spec;
        const std::vector<double> dts{0.8, 0.4, 0.2, 0.1, 0.05};
        return mms::run_temporal_study(spec, HalfNodeScheme::EpsI, kPi / 48, dts);
    }();
    return study;
}

Outcome temporal_convergence() {
    Outcome o;
    const auto& study = temporal_study();
    for (const auto& r : study.rows)
        o.info(fmt("dt=%.2f Linf %.4e L2 %.4e%s", r.step, r.errors.linf, r.errors.l2,
                   r.failed ? " (failed)" : ""));
    const auto& last = study.rows.back();
    o.require(!last.failed && within_rel(last.errors.linf, 2.33e-2, 0.15),
              fmt("dt=0.05 Linf %.4e (reference 2.33e-02, within 15%%)", last.errors.linf));
    o.require(study.linf_slope && *study.linf_slope >= 0.8 && *study.linf_slope <= 1.3,
              fmt("least-squares Linf slope %.3f in [0.8, 1.3]",
                  study.linf_slope.value_or(std::nan(""))));
    if (study.l2_slope) o.info(fmt("least-squares L2 slope %.3f", *study.l2_slope));
    return o;
}

Outcome large_step_stability() {
    Outcome o;
    const auto& row = temporal_study().rows.front();
    o.require(!row.failed, "dt=0.8 run reached T=10 without blow-up");
    o.require(std::isfinite(row.errors.linf) && row.errors.linf <= 1.0,
              fmt("dt=0.8 Linf %.4f <= 1.0", row.errors.linf));
    return o;
}

// ---- 4-5: one-atom system -------------------------------------------------

struct AtomCase {
    SolvationProblem problem;
    ScalarField phi_vac;
};

const AtomCase& atom_case(double alpha) {
    static std::map<double, AtomCase> cache;
    static std::unique_ptr<ScalarField> vacuum;
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
    ProblemConfig pc;
    pc.alpha = alpha;
    SolvationProblem prob = make_problem(unit_atom(), pc);
    // The vacuum field does not depend on alpha.
    if (!vacuum) vacuum = std::make_unique<ScalarField>(solve_vacuum(prob));
    return cache.emplace(alpha, AtomCase{std::move(prob), *vacuum}).first->second;
}

const BvpRun& bvp_reference(double alpha) {
    static std::map<double, BvpRun> cache;
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
    BvpConfig cfg;
    cfg.energy_tol = 0.01;
    cfg.max_outer_iters = 300;
    cfg.scheme = HalfNodeScheme::EpsI;
    const AtomCase& c = atom_case(alpha);
    return cache.emplace(alpha, run_bvp(c.problem, c.phi_vac, cfg)).first->second;
}

AdiRun adi_run(double alpha, HalfNodeScheme scheme, double dt, double t_final) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_final = t_final;
    cfg.energy_tol = 0.01;
    cfg.scheme = scheme;
    const AtomCase& c = atom_case(alpha);
    return run_adi(c.problem, c.phi_vac, cfg);
}

Outcome oracle_equivalence() {
    Outcome o;
    const AdiRun a1 = adi_run(40.0, HalfNodeScheme::EpsI, 0.1, 5.0);
    const AdiRun a2 = adi_run(40.0, HalfNodeScheme::EpsII, 0.1, 5.0);
    const BvpRun& b = bvp_reference(40.0);
    o.info(fmt("ADI eps1 (dt 0.1, T 5): dG_p %.4f, converged %d, last change %.4f", a1.report.dG_p,
               a1.solve.converged, a1.solve.final_energy_delta));
    o.info(fmt("ADI eps2 (dt 0.1, T 5): dG_p %.4f, converged %d, last change %.4f", a2.report.dG_p,
               a2.solve.converged, a2.solve.final_energy_delta));
    o.info(fmt("BVP eps1 (tol 0.01): dG_p %.4f after %d outer iterations, converged %d",
               b.report.dG_p, b.solve.outer_iterations, b.solve.converged));
    o.require(std::abs(a1.report.dG_p - b.report.dG_p) <= 1.0,
              fmt("|ADI - BVP| = %.3f kcal/mol <= 1", std::abs(a1.report.dG_p - b.report.dG_p)));
    const double rel = std::abs(a1.report.dG_p - a2.report.dG_p) /
                       std::max(std::abs(a1.report.dG_p), std::abs(a2.report.dG_p));
    o.require(rel <= 0.01, fmt("|eps1 - eps2| / |dG_p| = %.2f%% <= 1%%", 100.0 * rel));

    const AdiRun steady = adi_run(40.0, HalfNodeScheme::EpsI, 0.1, 100.0);
    o.info(fmt("diagnostic: ADI eps1 run on to its tolerance stops at t=%.1f with dG_p %.4f "
               "(|ADI - BVP| = %.3f)",
               steady.solve.steps_taken * 0.1, steady.report.dG_p,
               std::abs(steady.report.dG_p - b.report.dG_p)));
    const AdiRun small = adi_run(40.0, HalfNodeScheme::EpsI, 0.02, 5.0);
    o.info(fmt("diagnostic: ADI eps1 with dt 0.02 to T 5 gives dG_p %.4f", small.report.dG_p));
    return o;
}

Outcome alpha_sweep() {
    Outcome o;
    const std::vector<double> alphas{1.0, 10.0, 40.0, 100.0};
    std::vector<EnergyReport> adi, bvp;
    for (double alpha : alphas) {
        const AdiRun a = adi_run(alpha, HalfNodeScheme::EpsI, 0.05, 100.0);
        const BvpRun& b = bvp_reference(alpha);
        adi.push_back(a.report);
        bvp.push_back(b.report);
        o.info(fmt("alpha %5.1f ADI dG_p %9.4f area %8.3f vol %8.3f (t=%.2f, converged %d)", alpha,
                   a.report.dG_p, a.report.area, a.report.volume, a.solve.steps_taken * 0.05,
                   a.solve.converged));
        o.info(fmt("alpha %5.1f BVP dG_p %9.4f area %8.3f vol %8.3f (%d outer, converged %d)",
                   alpha, b.report.dG_p, b.report.area, b.report.volume, b.solve.outer_iterations,
                   b.solve.converged));
    }
    bool finite = true, same_sign = true;
    for (const auto* set : {&adi, &bvp})
        for (const auto& r : *set) {
            finite = finite && std::isfinite(r.dG_p) && std::isfinite(r.area) &&
                     std::isfinite(r.volume);
            same_sign = same_sign && r.dG_p < 0.0 && r.volume >= 0.0 && r.area >= 0.0;
        }
    o.require(finite, "all energies, areas and volumes finite");
    o.require(same_sign, "dG_p negative and area, volume non-negative for every alpha");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        o.require(within_rel(adi[i].dG_p, bvp[i].dG_p, 0.02),
                  fmt("alpha %.0f: dG_p ADI vs BVP within 2%% (%.2f%%)", alphas[i],
                      100.0 * std::abs(adi[i].dG_p / bvp[i].dG_p - 1.0)));
        o.require(within_rel(adi[i].volume, bvp[i].volume, 0.02),
                  fmt("alpha %.0f: volume ADI vs BVP within 2%% (%.2f%%)", alphas[i],
                      100.0 * std::abs(adi[i].volume / bvp[i].volume - 1.0)));
        o.info(fmt("alpha %.0f: area ADI vs BVP differ by %.2f%% (not gated)", alphas[i],
                   100.0 * std::abs(adi[i].area / bvp[i].area - 1.0)));
    }
    for (const auto* set : {&adi, &bvp}) {
        bool monotone = true;
        for (std::size_t i = 1; i < set->size(); ++i)
            monotone = monotone && (*set)[i].volume > (*set)[i - 1].volume &&
                       std::abs((*set)[i].dG_p) < std::abs((*set)[i - 1].dG_p);
        o.require(monotone, std::string(set == &adi ? "ADI" : "BVP") +
                                ": volume grows and |dG_p| shrinks as alpha increases");
    }
    o.info("both runs stop at steady states; the flux eps(E) E is not monotone in E, so the");
    o.info("dielectric front is not unique and the Coulomb start (ADI) and the piecewise start");
    o.info("(BVP) can settle on different fronts");
    return o;
}

// ---- 6: linear limit --------------------------------------------------------

struct LinearRun {
    double residual = 0.0;
    long steps = 0;
    double dG_p = 0.0;
};

LinearRun linear_limit(double h) {
    ProblemConfig pc;
    pc.h = h;
    pc.eps_m = 80.0;
    pc.eps_s = 80.0;
    const SolvationProblem prob = make_problem(unit_atom(), pc);
    const ScalarField vac = solve_vacuum(prob);

    HalfNodeEps eps;
    for (auto& v : eps.values) v.assign(prob.grid.size(), 80.0);
    const LinearSystem sys = assemble_bvp(eps, prob.source, prob.boundary);
    auto residual = [&](const ScalarField& phi) {
        Eigen::Map<const Eigen::VectorXd> x(phi.values().data(),
                                            static_cast<Eigen::Index>(phi.size()));
        return (sys.matrix * x - sys.rhs).norm() / sys.rhs.norm();
    };

    ScalarField phi = coulomb_initial_guess(prob);
    phi.copy_boundary_from(prob.boundary);
    AdiStepper stepper(prob.grid, prob.model, HalfNodeScheme::EpsI);
    LinearRun run;
    // Small steps keep the splitting from stalling the grid-scale error modes.
    const double dt = 0.001;
    run.residual = residual(phi);
    while (run.residual >= 1e-6 && run.steps < 20000) {
        for (int k = 0; k < 50; ++k) stepper.step(phi, prob.source, dt);
        run.steps += 50;
        run.residual = residual(phi);
    }
    run.dG_p = electrostatic_solvation(phi, vac, prob.system, prob.constants);
    return run;
}

Outcome linear_limit_sanity() {
    Outcome o;
    const LinearRun coarse = linear_limit(0.5);
    const LinearRun fine = linear_limit(0.25);
    o.require(coarse.residual < 1e-6,
              fmt("h=0.5: relative 7-point residual %.2e < 1e-6 after %ld steps of dt 0.001",
                  coarse.residual, coarse.steps));
    o.require(fine.residual < 1e-6,
              fmt("h=0.25: relative 7-point residual %.2e < 1e-6 after %ld steps of dt 0.001",
                  fine.residual, fine.steps));
    const double change = std::abs(fine.dG_p / coarse.dG_p - 1.0);
    o.require(change < 0.05, fmt("dG_p h=0.5 %.3f -> h=0.25 %.3f, change %.1f%% < 5%%",
                                 coarse.dG_p, fine.dG_p, 100.0 * change));
    o.info("with eps 80 everywhere dG_p = -(1 - 1/80) x (grid self-energy), which grows like 1/h");
    return o;
}

// ---- 7: kernels -------------------------------------------------------------

Outcome kernel_correctness() {
    Outcome o;
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> size(1, 200);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = size(rng);
        TridiagonalSystem sys;
        sys.lower.resize(n - 1);
        sys.upper.resize(n - 1);
        sys.diag.resize(n);
        sys.rhs.resize(n);
        for (auto& v : sys.lower) v = u(rng);
        for (auto& v : sys.upper) v = u(rng);
        for (int i = 0; i < n; ++i) {
            const double off = (i > 0 ? std::abs(sys.lower[i - 1]) : 0.0) +
                               (i + 1 < n ? std::abs(sys.upper[i]) : 0.0);
            sys.diag[i] = (off + 0.1 + std::abs(u(rng))) * (u(rng) < 0 ? -1.0 : 1.0);
            sys.rhs[i] = u(rng);
        }
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            a(i, i) = sys.diag[i];
            if (i > 0) a(i, i - 1) = sys.lower[i - 1];
            if (i + 1 < n) a(i, i + 1) = sys.upper[i];
            b(i) = sys.rhs[i];
        }
        const Eigen::VectorXd ref = a.partialPivLu().solve(b);
        const std::vector<double> x = solve_tridiagonal(sys);
        double err = 0.0;
        for (int i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - ref(i)));
        worst = std::max(worst, err / std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
    o.require(worst <= 1e-10, fmt("Thomas vs dense LU on 1000 systems: worst error %.2e <= 1e-10", worst));

    // One Douglas-Rachford step on a 5^3 grid with homogeneous Dirichlet data.
    const Grid grid({0.0, 0.0, 0.0}, 0.5, {5, 5, 5});
    const double eps = 3.0, dt = 0.05;
    const DielectricModel model = DielectricModel::uniform(eps);
    ScalarField phi(grid, 0.0), q(grid, 0.0);
    std::vector<std::size_t> interior;
    for_each_interior(grid, [&](const Index3& n) { interior.push_back(grid.linear(n)); });
    for (std::size_t l : interior) {
        phi[l] = u(rng);
        q[l] = u(rng);
    }
    ScalarField next = phi;
    AdiStepper stepper(grid, model, HalfNodeScheme::EpsI);
    stepper.step(next, q, dt);

    const int m = static_cast<int>(interior.size());
    std::map<std::size_t, int> slot;
    for (int i = 0; i < m; ++i) slot[interior[i]] = i;
    std::array<Eigen::MatrixXd, 3> L;
    for (Axis axis : kAxes) {
        Eigen::MatrixXd& la = L[static_cast<int>(axis)];
        la = Eigen::MatrixXd::Zero(m, m);
        const double c = eps / (grid.h() * grid.h());
        for (int i = 0; i < m; ++i) {
            const Index3 n = grid.unravel(interior[i]);
            la(i, i) = -2.0 * c;
            for (int s : {-1, 1}) {
                const Index3 nb = n.shifted(axis, s);
                if (!grid.on_boundary(nb)) la(i, slot[grid.linear(nb)]) = c;
            }
        }
    }
    Eigen::VectorXd v0(m), v1(m), qv(m);
    for (int i = 0; i < m; ++i) {
        v0(i) = phi[interior[i]];
        v1(i) = next[interior[i]];
        qv(i) = q[interior[i]];
    }
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
    const Eigen::MatrixXd Lsum = L[0] + L[1] + L[2];
    const Eigen::MatrixXd pair = L[0] * L[1] + L[0] * L[2] + L[1] * L[2];
    const Eigen::MatrixXd triple = L[0] * L[1] * L[2];
    const Eigen::VectorXd d = v1 - v0;
    const Eigen::VectorXd lhs = (I - dt * Lsum) * v1;
    const Eigen::VectorXd rhs = v0 + dt * qv - dt * dt * pair * d + dt * dt * dt * triple * d;
    const double identity_err = (lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
    o.require(identity_err <= 1e-12,
              fmt("DR step satisfies backward Euler plus the dt^2 and dt^3 splitting terms: "
                  "relative mismatch %.2e",
                  identity_err));
    const Eigen::VectorXd be = (I - dt * Lsum).partialPivLu().solve(v0 + dt * qv);
    o.info(fmt("max |DR - backward Euler| = %.3e at dt=%.2f", (v1 - be).cwiseAbs().maxCoeff(), dt));
    return o;
}

// ---- 8: forcing identity ----------------------------------------------------

Outcome forcing_identity() {
    Outcome o;
    const mms::BenchmarkSpec spec;
    const DielectricModel model = spec.model();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> space(-kPi, kPi), time(0.0, spec.t_final);

    auto flux = [&](int axis, double x, double y, double z, double t) {
        const auto d = mms::exact_derivatives(x, y, z, t, spec.gamma);
        const double g = d.grad[0] * d.grad[0] + d.grad[1] * d.grad[1] + d.grad[2] * d.grad[2];
        return model.value(g) * d.grad[axis];
    };
    // Sixth-order central difference of the closed-form flux.
    const double step = 1e-3;
    const std::array<double, 3> w{45.0, -9.0, 1.0};
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double x = space(rng), y = space(rng), z = space(rng), t = time(rng);
        double div = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            double acc = 0.0;
            for (int k = 1; k <= 3; ++k) {
                std::array<double, 3> p{x, y, z}, m{x, y, z};
                p[axis] += k * step;
                m[axis] -= k * step;
                acc += w[k - 1] * (flux(axis, p[0], p[1], p[2], t) - flux(axis, m[0], m[1], m[2], t));
            }
            div += acc / (60.0 * step);
        }
        const double phi_t = mms::exact_derivatives(x, y, z, t, spec.gamma).phi_t;
        worst = std::max(worst, std::abs(phi_t - div - mms::source_term_F(x, y, z, t, spec)));
    }
    o.require(worst < 1e-6, fmt("max |phi_t - div(eps grad phi) - F| over 1000 points = %.2e", worst));
    return o;
}

// ---- 9: determinism ---------------------------------------------------------

std::string run_capture(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run_cli(args, out, err);
    return out.str();
}

Outcome determinism() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "npadi_acceptance";
    std::filesystem::create_directories(dir);
    const auto pqr = (dir / "dipole.pqr").string();
    {
        std::ofstream f(pqr);
        f << "ATOM      1  C1  MOL     1       0.300  -0.200   0.100  0.4000 1.7000\n"
             "ATOM      2  O1  MOL     1       1.500   0.400  -0.300 -0.4000 1.5000\n";
    }
    const std::vector<std::string> args{"solvate", "--pqr", pqr,           "--h",  "0.5",
                                        "--padding", "4",   "--t-final", "1.0", "--dispersion"};
    int c1 = 0, c2 = 0, c3 = 0;
    const std::string first = run_capture(args, c1);
    const std::string second = run_capture(args, c2);
    setenv("NPADI_THREADS", "2", 1);
    const std::string third = run_capture(args, c3);
    unsetenv("NPADI_THREADS");
    o.require(c1 == 0 && c2 == 0 && c3 == 0, "solvate runs exit 0");
    o.require(!first.empty() && first == second, "identical configuration gives byte-identical JSON");
    o.require(first == third, "output does not depend on NPADI_THREADS");
    const auto at = first.find("\"config_hash\"");
    o.require(at != std::string::npos, "report embeds the configuration hash");

    const char* compounds = std::getenv("NPADI_COMPOUND_DIR");
    if (compounds && *compounds) {
        int code = 0;
        const std::string report = run_capture(
            {"solvate", "--pqr-dir", compounds, "--experimental",
             std::string(NPADI_DATA_DIR) + "/compounds17.csv"},
            code);
        o.require(code == 0, "compound set solvated");
        const auto r = report.find("\"rmse\"");
        if (r != std::string::npos)
            o.info("compound set " + report.substr(r, report.find('\n', r) - r) +
                   " (1.80 +/- 0.3 is a stretch goal, not gated)");
        else
            o.info("no PQR stem matched the experimental table; RMSE not computed");
    } else {
        o.info("NPADI_COMPOUND_DIR not set: compound-set RMSE skipped (needs user-supplied PQRs)");
    }
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "spatial convergence of the manufactured benchmark", spatial_convergence},
        {2, "temporal convergence of the manufactured benchmark", temporal_convergence},
        {3, "large-step stability at dt=0.8", large_step_stability},
        {4, "one-atom ADI vs BVP and eps1 vs eps2", oracle_equivalence},
        {5, "one-atom alpha sweep", alpha_sweep},
        {6, "linear-limit sanity", linear_limit_sanity},
        {7, "kernel correctness", kernel_correctness},
        {8, "manufactured forcing identity", forcing_identity},
        {9, "deterministic reruns", determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome result;
        try {
            result = c.run();
        } catch (const std::exception& e) {
            result.pass = false;
            result.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%.0f s)\n", result.pass ? "PASS" : "FAIL", c.id, c.title,
                    secs);
        for (const auto& n : result.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        if (!result.pass) ++failures;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
