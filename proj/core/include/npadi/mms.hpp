#pragma once

#include "npadi/dielectric.hpp"
#include "npadi/grid.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace npadi::mms {

/// Manufactured nonlinear diffusion problem on [-L, L]^3 with
///   phi(x,y,z,t) = sin x sin y sin z (1 + exp(-gamma t))
/// and eps(g) = eps_m + (eps_s - eps_m) / (1 + alpha g).
struct BenchmarkSpec {
    double eps_m = 1.0;
    double eps_s = 80.0;
    double alpha = 0.1;
    double gamma = 0.1;
    double t_final = 10.0;
    double half_width = 3.14159265358979323846;

    DielectricModel model() const;
};

double exact_solution(double x, double y, double z, double t, double gamma);

/// Closed-form derivatives of the manufactured solution at one point.
struct ExactDerivatives {
    double phi, phi_t;
    Vec3 grad;
    double xx, yy, zz, xy, xz, yz;
};
ExactDerivatives exact_derivatives(double x, double y, double z, double t, double gamma);

/// Forcing F = phi_t - div(eps grad phi), with the eps derivatives taken from the
/// dielectric model actually used (chain rule through d eps / d g).
double source_term_F(double x, double y, double z, double t, const BenchmarkSpec& spec);

struct ErrorNorms {
    double linf = 0.0;
    double l2 = 0.0; ///< root mean square over all nodes
};

/// Error of a field against the exact solution at time t.
ErrorNorms measure_error(const ScalarField& phi, double t, const BenchmarkSpec& spec);

struct BenchmarkRun {
    ErrorNorms errors;
    long steps = 0;
    double wall_time = 0.0;
};

/// Grid with `intervals` cells per side covering [-L, L]^3.
Grid benchmark_grid(const BenchmarkSpec& spec, int intervals);

/// Integrates from the exact t = 0 field to spec.t_final with the ADI stepper.
/// The forcing of each step is F at the new time level. When t_final is not a
/// multiple of dt the last step is shortened to land exactly on t_final.
BenchmarkRun run_benchmark(const BenchmarkSpec& spec, HalfNodeScheme scheme, int intervals,
                           double dt);

struct ConvergenceRow {
    double step = 0.0; ///< h for spatial studies, dt for temporal ones
    ErrorNorms errors;
    std::optional<double> linf_order;
    std::optional<double> l2_order;
    bool failed = false;
    std::string failure;
    double wall_time = 0.0;
};

/// h values must divide 2L evenly. Orders are log(e_prev/e)/log(step_prev/step).
std::vector<ConvergenceRow> run_spatial_study(const BenchmarkSpec& spec, HalfNodeScheme scheme,
                                              double dt, std::span<const double> h_list);

struct TemporalStudy {
    std::vector<ConvergenceRow> rows;
    std::optional<double> linf_slope;
    std::optional<double> l2_slope;
};

/// dt_list must be strictly descending.
TemporalStudy run_temporal_study(const BenchmarkSpec& spec, HalfNodeScheme scheme, double h,
                                 std::span<const double> dt_list);

/// Least-squares slope of log(error) against log(step).
double fit_order(std::span<const std::pair<double, double>> points);

} // namespace npadi::mms
