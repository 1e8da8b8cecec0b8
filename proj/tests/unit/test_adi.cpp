#include "npadi/adi.hpp"
#include "npadi/bvp.hpp"
#include "npadi/errors.hpp"
#include "npadi/mms.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace npadi;

namespace {

ScalarField random_field(const Grid& g, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    ScalarField f(g);
    for (double& v : f.values()) v = u(rng);
    return f;
}

// Interior values of delta^2_axis applied to f with a fixed eps model; boundary zero.
ScalarField apply_axis(const ScalarField& f, const DielectricModel& m, Axis a) {
    ScalarField out(f.grid());
    for_each_interior(f.grid(), [&](const Index3& n) {
        out(n) = apply_delta_sq(f, m, HalfNodeScheme::EpsI, a, n);
    });
    return out;
}

} // namespace

TEST_CASE("delta^2 vanishes on constant and, with uniform eps, linear fields") {
    const Grid g({0, 0, 0}, 0.5, {6, 6, 6});
    const auto nonlinear = DielectricModel::rational(1, 80, 3, 1, 1.0);
    const ScalarField c(g, 2.5);
    ScalarField lin(g);
    for_each_node(g, [&](const Index3& n) {
        const Vec3 p = g.node_position(n);
        lin(n) = 3 * p[0] - p[1] + 0.25 * p[2];
    });
    for_each_interior(g, [&](const Index3& n) {
        for (Axis a : kAxes)
            for (auto s : {HalfNodeScheme::EpsI, HalfNodeScheme::EpsII}) {
                CHECK(apply_delta_sq(c, nonlinear, s, a, n) == 0.0);
                CHECK(apply_delta_sq(lin, DielectricModel::uniform(7), s, a, n) ==
                      doctest::Approx(0.0).scale(1.0));
                // A linear field has a constant gradient, so eps is constant too.
                CHECK(apply_delta_sq(lin, nonlinear, s, a, n) ==
                      doctest::Approx(0.0).scale(1.0));
            }
    });
    CHECK_THROWS_AS(apply_delta_sq(c, nonlinear, HalfNodeScheme::EpsI, Axis::X, {0, 2, 2}),
                    StencilError);
    CHECK_THROWS_AS(apply_delta_sq(c, nonlinear, HalfNodeScheme::EpsII, Axis::Z, {2, 2, 5}),
                    StencilError);
}

TEST_CASE("delta^2 with uniform eps is the scaled second difference") {
    const Grid g({0, 0, 0}, 0.5, {5, 5, 5});
    const ScalarField f = random_field(g, 1);
    const Index3 n{2, 1, 3};
    const double expect =
        4.0 * (f(3, 1, 3) - 2 * f(2, 1, 3) + f(1, 1, 3)) / 0.25;
    CHECK(apply_delta_sq(f, DielectricModel::uniform(4), HalfNodeScheme::EpsI, Axis::X, n) ==
          doctest::Approx(expect));
}

TEST_CASE("discrete operator is second-order accurate for both schemes") {
    mms::BenchmarkSpec spec;
    const DielectricModel m = spec.model();
    for (auto scheme : {HalfNodeScheme::EpsI, HalfNodeScheme::EpsII}) {
        double prev = 0.0;
        for (int intervals : {16, 32, 64}) {
            const Grid g = mms::benchmark_grid(spec, intervals);
            ScalarField phi(g);
            for_each_node(g, [&](const Index3& n) {
                const Vec3 p = g.node_position(n);
                phi(n) = mms::exact_solution(p[0], p[1], p[2], 0.0, spec.gamma);
            });
            double err = 0.0;
            for_each_interior(g, [&](const Index3& n) {
                // eps2 uses one-sided nodal gradients on the boundary, which leaves a
                // first-order truncation error in the first interior layer.
                for (Axis a : kAxes)
                    if (n[a] < 2 || n[a] > g.dim(a) - 3) return;
                const Vec3 p = g.node_position(n);
                double lhs = 0.0;
                for (Axis a : kAxes) lhs += apply_delta_sq(phi, m, scheme, a, n);
                const double exact = mms::exact_derivatives(p[0], p[1], p[2], 0.0, spec.gamma).phi_t -
                                     mms::source_term_F(p[0], p[1], p[2], 0.0, spec);
                err = std::max(err, std::abs(lhs - exact));
            });
            if (prev > 0.0) {
                const double order = std::log2(prev / err);
                CHECK(order > 1.8);
                CHECK(order < 2.3);
            }
            prev = err;
        }
    }
}

TEST_CASE("a constant field with no source is a fixed point") {
    const Grid g({0, 0, 0}, 0.5, {7, 6, 5});
    ScalarField phi(g, -1.25);
    const ScalarField q(g, 0.0);
    AdiStepper stepper(g, DielectricModel::rational(1, 80, 5), HalfNodeScheme::EpsII);
    for (int s = 0; s < 3; ++s) stepper.step(phi, q, 0.3);
    for (double v : phi.values()) CHECK(v == doctest::Approx(-1.25).epsilon(1e-14));
    CHECK(stepper.steps_taken() == 3);
}

TEST_CASE("boundary values are left untouched") {
    const Grid g({0, 0, 0}, 0.5, {6, 7, 8});
    ScalarField phi = random_field(g, 4, 3.0);
    const ScalarField before = phi;
    const ScalarField q = random_field(g, 5, 10.0);
    AdiStepper stepper(g, DielectricModel::simplified(1, 80, 0.2), HalfNodeScheme::EpsI);
    stepper.step(phi, q, 0.05);
    for_each_boundary(g, [&](const Index3& n) { CHECK(phi(n) == before(n)); });
}

TEST_CASE("one step satisfies the Douglas-Rachford perturbation identity") {
    const Grid g({0, 0, 0}, 0.5, {6, 6, 6});
    const DielectricModel m = DielectricModel::uniform(3.0);
    ScalarField phi_n = random_field(g, 6);
    for_each_boundary(g, [&](const Index3& n) { phi_n(n) = 0.0; });
    const ScalarField q = random_field(g, 7, 5.0);
    const double dt = 0.2;
    ScalarField phi1 = phi_n;
    AdiStepper(g, m, HalfNodeScheme::EpsI).step(phi1, q, dt);

    ScalarField d(g);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = phi1[i] - phi_n[i];
    const ScalarField lx1 = apply_axis(phi1, m, Axis::X), ly1 = apply_axis(phi1, m, Axis::Y),
                      lz1 = apply_axis(phi1, m, Axis::Z);
    const ScalarField ly = apply_axis(d, m, Axis::Y), lz = apply_axis(d, m, Axis::Z);
    const ScalarField lxly = apply_axis(ly, m, Axis::X), lxlz = apply_axis(lz, m, Axis::X),
                      lylz = apply_axis(lz, m, Axis::Y);
    const ScalarField lxlylz = apply_axis(lylz, m, Axis::X);
    double worst = 0.0, scale = 0.0;
    for_each_interior(g, [&](const Index3& n) {
        const double lhs = phi1(n) - dt * (lx1(n) + ly1(n) + lz1(n));
        const double rhs = phi_n(n) + dt * q(n) - dt * dt * (lxly(n) + lxlz(n) + lylz(n)) +
                           dt * dt * dt * lxlylz(n);
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
    });
    CHECK(worst / scale < 1e-12);
}

TEST_CASE("adi_step matches a stepper step") {
    const Grid g({0, 0, 0}, 0.5, {6, 6, 6});
    const DielectricModel m = DielectricModel::rational(1, 80, 2, 1, 1.0);
    const ScalarField phi = random_field(g, 8);
    const ScalarField q = random_field(g, 9);
    SolverConfig c;
    c.dt = 0.07;
    c.scheme = HalfNodeScheme::EpsII;
    const ScalarField a = adi_step(phi, q, m, c);
    ScalarField b = phi;
    AdiStepper(g, m, HalfNodeScheme::EpsII).step(b, q, 0.07);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("linear steady state does not depend on dt") {
    const Grid g({0, 0, 0}, 0.25, {9, 9, 9});
    const DielectricModel m = DielectricModel::uniform(80.0);
    ScalarField phi0 = random_field(g, 10);
    const ScalarField q = random_field(g, 11, 100.0);
    ScalarField ref = phi0;
    solve_linear_system(assemble_bvp(phi0, q, m, HalfNodeScheme::EpsI), ref, 1e-13, 5000);
    for (double dt : {0.0002, 0.0005}) {
        SolverConfig c;
        c.dt = dt;
        c.t_final.reset();
        c.max_steps = 5000;
        c.energy_tol = 1e-10;
        const auto r = solve_steady(phi0, q, m, c);
        CHECK(r.converged);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(r.phi[i] == doctest::Approx(ref[i]).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("solver configuration checks") {
    SolverConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.total_steps() == 50);
    c.t_final = 0.25;
    c.dt = 0.1;
    CHECK(c.total_steps() == 3);
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigurationError);
    c.dt = 0.1;
    c.max_steps = 4;
    CHECK_THROWS_AS(c.validate(), ConfigurationError);
    c.t_final.reset();
    CHECK(c.total_steps() == 4);
    c.energy_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigurationError);
    c.energy_tol = 1.0;
    c.monitor_every = 0;
    CHECK_THROWS_AS(c.validate(), ConfigurationError);
}

TEST_CASE("stepper rejects mismatched grids and reports blow-up") {
    const Grid g({0, 0, 0}, 0.5, {5, 5, 5});
    AdiStepper stepper(g, DielectricModel::uniform(1), HalfNodeScheme::EpsI);
    ScalarField other(Grid({0, 0, 0}, 0.5, {6, 5, 5}));
    CHECK_THROWS_AS(stepper.step(other, other, 0.1), ConfigurationError);
    ScalarField phi(g);
    ScalarField q(g);
    q(2, 2, 2) = NAN;
    CHECK_THROWS_AS(stepper.step(phi, q, 0.1), BlowUpError);
    ScalarField bad(g);
    bad(1, 1, 1) = INFINITY;
    SolverConfig c;
    CHECK_THROWS_AS(solve_steady(bad, ScalarField(g), DielectricModel::uniform(1), c), ArgumentError);
}

TEST_CASE("solve_steady stops early once the monitor settles") {
    const Grid g({0, 0, 0}, 0.5, {6, 6, 6});
    SolverConfig c;
    c.dt = 0.5;
    c.t_final = 100.0;
    c.energy_tol = 1e-6;
    const auto r = solve_steady(ScalarField(g, 1.0), ScalarField(g), DielectricModel::uniform(2), c);
    CHECK(r.converged);
    CHECK(r.steps_taken < 200);
    CHECK_FALSE(r.trace.empty());
    c.stop_on_convergence = false;
    const auto full = solve_steady(ScalarField(g, 1.0), ScalarField(g), DielectricModel::uniform(2), c);
    CHECK(full.steps_taken == 200);
}
