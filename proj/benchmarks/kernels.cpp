#include "npadi/adi.hpp"
#include "npadi/dielectric.hpp"
#include "npadi/mms.hpp"
#include "npadi/tridiag.hpp"
#include "npadi/workflow.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace npadi;

static void BM_Thomas(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> lower(n - 1), upper(n - 1), diag(n), rhs(n), x(n), scratch(n);
    for (auto& v : lower) v = u(rng);
    for (auto& v : upper) v = u(rng);
    for (auto& v : diag) v = 3.0 + u(rng);
    for (auto& v : rhs) v = u(rng);
    for (auto _ : state) {
        solve_tridiagonal(lower, diag, upper, rhs, x, scratch);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_Thomas)->Arg(64)->Arg(256)->Arg(1024);

static ScalarField mms_field(int intervals, mms::BenchmarkSpec& spec) {
    const Grid g = mms::benchmark_grid(spec, intervals);
    ScalarField phi(g);
    for_each_node(g, [&](const Index3& n) {
        const Vec3 p = g.node_position(n);
        phi(n) = mms::exact_solution(p[0], p[1], p[2], 0.0, spec.gamma);
    });
    return phi;
}

static void BM_HalfNodeEps(benchmark::State& state) {
    mms::BenchmarkSpec spec;
    const ScalarField phi = mms_field(static_cast<int>(state.range(0)), spec);
    const auto scheme = state.range(1) == 1 ? HalfNodeScheme::EpsI : HalfNodeScheme::EpsII;
    HalfNodeEps eps;
    for (auto _ : state) {
        compute_half_node_eps(phi, spec.model(), scheme, eps);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(phi.size()));
}
BENCHMARK(BM_HalfNodeEps)->Args({64, 1})->Args({64, 2})->Unit(benchmark::kMillisecond);

static void BM_AdiStep(benchmark::State& state) {
    mms::BenchmarkSpec spec;
    ScalarField phi = mms_field(static_cast<int>(state.range(0)), spec);
    const ScalarField source(phi.grid(), 1.0);
    AdiStepper stepper(phi.grid(), spec.model(), HalfNodeScheme::EpsI);
    for (auto _ : state) stepper.step(phi, source, 1e-3);
    state.SetItemsProcessed(state.iterations() * static_cast<long>(phi.size()));
}
BENCHMARK(BM_AdiStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BornAdiRun(benchmark::State& state) {
    ProblemConfig pc;
    pc.h = 0.5;
    const SolvationProblem prob = make_problem(unit_atom(), pc);
    const ScalarField vac = solve_vacuum(prob);
    SolverConfig c;
    c.t_final = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(run_adi(prob, vac, c).report.dG_p);
}
BENCHMARK(BM_BornAdiRun)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
