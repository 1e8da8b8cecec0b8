#include "npadi/mms.hpp"

#include "npadi/adi.hpp"
#include "npadi/errors.hpp"

#include <chrono>
#include <cmath>

namespace npadi::mms {

DielectricModel BenchmarkSpec::model() const {
    return DielectricModel::simplified(eps_m, eps_s, alpha);
}

double exact_solution(double x, double y, double z, double t, double gamma) {
    return std::sin(x) * std::sin(y) * std::sin(z) * (1.0 + std::exp(-gamma * t));
}

namespace {

ExactDerivatives derivatives_from_trig(double sx, double cx, double sy, double cy, double sz,
                                       double cz, double tau, double dtau) {
    ExactDerivatives d{};
    const double s = sx * sy * sz;
    d.phi = s * tau;
    d.phi_t = s * dtau;
    d.grad = {cx * sy * sz * tau, sx * cy * sz * tau, sx * sy * cz * tau};
    d.xx = d.yy = d.zz = -d.phi;
    d.xy = cx * cy * sz * tau;
    d.xz = cx * sy * cz * tau;
    d.yz = sx * cy * cz * tau;
    return d;
}

double forcing(const ExactDerivatives& d, const DielectricModel& model) {
    const Vec3& g = d.grad;
    const double grad_sq = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
    const double eps = model.value(grad_sq);
    const double deps = model.derivative(grad_sq);
    // d(grad_sq)/dx etc.
    const double gx = 2.0 * (g[0] * d.xx + g[1] * d.xy + g[2] * d.xz);
    const double gy = 2.0 * (g[0] * d.xy + g[1] * d.yy + g[2] * d.yz);
    const double gz = 2.0 * (g[0] * d.xz + g[1] * d.yz + g[2] * d.zz);
    const double eps_x = deps * gx;
    const double eps_y = deps * gy;
    const double eps_z = deps * gz;
    return d.phi_t - eps_x * g[0] - eps_y * g[1] - eps_z * g[2] - eps * (d.xx + d.yy + d.zz);
}

} // namespace

ExactDerivatives exact_derivatives(double x, double y, double z, double t, double gamma) {
    const double e = std::exp(-gamma * t);
    return derivatives_from_trig(std::sin(x), std::cos(x), std::sin(y), std::cos(y), std::sin(z),
                                 std::cos(z), 1.0 + e, -gamma * e);
}

double source_term_F(double x, double y, double z, double t, const BenchmarkSpec& spec) {
    return forcing(exact_derivatives(x, y, z, t, spec.gamma), spec.model());
}

Grid benchmark_grid(const BenchmarkSpec& spec, int intervals) {
    if (intervals < 3) throw ArgumentError("benchmark grid needs at least 3 intervals per side");
    const double L = spec.half_width;
    return Grid({-L, -L, -L}, 2.0 * L / intervals, {intervals + 1, intervals + 1, intervals + 1});
}

namespace {

struct TrigTables {
    std::vector<double> s, c;
};

TrigTables trig_tables(const Grid& g) {
    TrigTables t;
    for (int i = 0; i < g.nx(); ++i) {
        const double x = g.origin()[0] + g.h() * i;
        t.s.push_back(std::sin(x));
        t.c.push_back(std::cos(x));
    }
    return t;
}

// The benchmark grid is a cube, so one table serves all three axes.
void fill_forcing(ScalarField& f, const TrigTables& tab, double t, const BenchmarkSpec& spec,
                  const DielectricModel& model) {
    const Grid& g = f.grid();
    const double e = std::exp(-spec.gamma * t);
    for_each_interior(g, [&](const Index3& n) {
        const ExactDerivatives d = derivatives_from_trig(tab.s[n.i], tab.c[n.i], tab.s[n.j],
                                                         tab.c[n.j], tab.s[n.k], tab.c[n.k],
                                                         1.0 + e, -spec.gamma * e);
        f(n) = forcing(d, model);
    });
}

void fill_exact(ScalarField& phi, const TrigTables& tab, double t, double gamma) {
    const double tau = 1.0 + std::exp(-gamma * t);
    for_each_node(phi.grid(), [&](const Index3& n) {
        phi(n) = tab.s[n.i] * tab.s[n.j] * tab.s[n.k] * tau;
    });
}

} // namespace

ErrorNorms measure_error(const ScalarField& phi, double t, const BenchmarkSpec& spec) {
    const Grid& g = phi.grid();
    ErrorNorms e;
    double sum_sq = 0.0;
    for_each_node(g, [&](const Index3& n) {
        const Vec3 r = g.node_position(n);
        const double err = std::abs(phi(n) - exact_solution(r[0], r[1], r[2], t, spec.gamma));
        e.linf = std::max(e.linf, err);
        sum_sq += err * err;
    });
    e.l2 = std::sqrt(sum_sq / static_cast<double>(g.size()));
    return e;
}

BenchmarkRun run_benchmark(const BenchmarkSpec& spec, HalfNodeScheme scheme, int intervals,
                           double dt) {
    if (!(dt > 0.0)) throw ArgumentError("dt must be positive");
    if (!(spec.t_final > 0.0)) throw ArgumentError("t_final must be positive");
    const auto start = std::chrono::steady_clock::now();
    const Grid grid = benchmark_grid(spec, intervals);
    const DielectricModel model = spec.model();
    const TrigTables tab = trig_tables(grid);

    ScalarField phi(grid);
    fill_exact(phi, tab, 0.0, spec.gamma);
    ScalarField forcing_field(grid);
    AdiStepper stepper(grid, model, scheme);

    const long full_steps = static_cast<long>(std::floor(spec.t_final / dt + 1e-9));
    const double remainder = spec.t_final - full_steps * dt;
    double t = 0.0;
    long steps = 0;
    auto advance = [&](double step_dt) {
        t += step_dt;
        fill_forcing(forcing_field, tab, t, spec, model);
        stepper.step(phi, forcing_field, step_dt);
        ++steps;
    };
    for (long n = 0; n < full_steps; ++n) advance(dt);
    if (remainder > 1e-9 * spec.t_final) advance(remainder);

    BenchmarkRun run;
    run.errors = measure_error(phi, spec.t_final, spec);
    run.steps = steps;
    run.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

namespace {

void fill_orders(std::vector<ConvergenceRow>& rows) {
    for (std::size_t n = 1; n < rows.size(); ++n) {
        const ConvergenceRow& prev = rows[n - 1];
        ConvergenceRow& row = rows[n];
        if (prev.failed || row.failed) continue;
        const double ratio = std::log(prev.step / row.step);
        if (row.errors.linf > 0.0 && prev.errors.linf > 0.0)
            row.linf_order = std::log(prev.errors.linf / row.errors.linf) / ratio;
        if (row.errors.l2 > 0.0 && prev.errors.l2 > 0.0)
            row.l2_order = std::log(prev.errors.l2 / row.errors.l2) / ratio;
    }
}

ConvergenceRow run_row(const BenchmarkSpec& spec, HalfNodeScheme scheme, int intervals,
                       double dt, double step) {
    ConvergenceRow row;
    row.step = step;
    try {
        const BenchmarkRun run = run_benchmark(spec, scheme, intervals, dt);
        row.errors = run.errors;
        row.wall_time = run.wall_time;
    } catch (const BlowUpError& e) {
        row.failed = true;
        row.failure = e.what();
    }
    return row;
}

int intervals_for(const BenchmarkSpec& spec, double h) {
    if (!(h > 0.0)) throw ArgumentError("h must be positive");
    const double n = 2.0 * spec.half_width / h;
    const double rounded = std::round(n);
    if (std::abs(n - rounded) > 1e-6 * rounded)
        throw ArgumentError("h must divide the benchmark domain evenly");
    return static_cast<int>(rounded);
}

} // namespace

std::vector<ConvergenceRow> run_spatial_study(const BenchmarkSpec& spec, HalfNodeScheme scheme,
                                              double dt, std::span<const double> h_list) {
    std::vector<ConvergenceRow> rows;
    for (double h : h_list) rows.push_back(run_row(spec, scheme, intervals_for(spec, h), dt, h));
    fill_orders(rows);
    return rows;
}

TemporalStudy run_temporal_study(const BenchmarkSpec& spec, HalfNodeScheme scheme, double h,
                                 std::span<const double> dt_list) {
    for (std::size_t n = 1; n < dt_list.size(); ++n)
        if (!(dt_list[n] < dt_list[n - 1]))
            throw ArgumentError("dt list must be strictly descending");
    const int intervals = intervals_for(spec, h);
    TemporalStudy study;
    for (double dt : dt_list) study.rows.push_back(run_row(spec, scheme, intervals, dt, dt));
    fill_orders(study.rows);

    std::vector<std::pair<double, double>> linf, l2;
    for (const auto& row : study.rows) {
        if (row.failed) continue;
        linf.emplace_back(row.step, row.errors.linf);
        l2.emplace_back(row.step, row.errors.l2);
    }
    if (linf.size() >= 2) {
        study.linf_slope = fit_order(linf);
        study.l2_slope = fit_order(l2);
    }
    return study;
}

double fit_order(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw ArgumentError("order fit needs at least two points");
    double mx = 0.0, my = 0.0;
    for (const auto& [step, err] : points) {
        if (!(step > 0.0) || !(err > 0.0))
            throw ArgumentError("order fit needs positive steps and errors");
        mx += std::log(step);
        my += std::log(err);
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [step, err] : points) {
        const double dx = std::log(step) - mx;
        sxy += dx * (std::log(err) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw ArgumentError("order fit needs at least two distinct steps");
    return sxy / sxx;
}

} // namespace npadi::mms
