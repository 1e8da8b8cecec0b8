#pragma once

#include "npadi/grid.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace npadi {

enum class DielectricKind { Rational, Exponential, SimplifiedRational };

/// Field-dependent permittivity eps(g), g = |grad phi|^2.
///
///   Rational:           eps_m + (eps_s - eps_m) / (1 + alpha * g / grad_scale)^p
///   Exponential:        eps_m + (eps_s - eps_m) * exp(-g / grad_scale)
///   SimplifiedRational: eps_m + (eps_s - eps_m) / (1 + alpha * g)
///
/// eps(0) = eps_s and eps decreases monotonically towards eps_m.
struct DielectricModel {
    DielectricKind kind = DielectricKind::Rational;
    double eps_m = 1.0;
    double eps_s = 80.0;
    double alpha = 0.0;
    int p = 1;
    double grad_scale = 1.0;

    static DielectricModel rational(double eps_m, double eps_s, double alpha, int p = 1,
                                    double grad_scale = 1.0);
    static DielectricModel exponential(double eps_m, double eps_s, double grad_scale = 1.0);
    static DielectricModel simplified(double eps_m, double eps_s, double alpha);
    /// eps == eps_s everywhere; used for the linear (vacuum or uniform) reference problems.
    static DielectricModel uniform(double eps);

    /// Throws ArgumentError on an inconsistent parameter set.
    void validate() const;

    /// True when eps does not depend on the gradient.
    bool is_linear() const noexcept;

    /// Unchecked evaluation for inner loops.
    double value(double grad_sq) const noexcept;
    /// d eps / d g.
    double derivative(double grad_sq) const noexcept;
};

std::string_view to_string(DielectricKind kind) noexcept;
DielectricKind parse_dielectric_kind(std::string_view name);

/// Checked evaluation; grad_sq must be finite and non-negative.
double eval_epsilon(const DielectricModel& model, double grad_sq);

/// How the permittivity at a half node is discretised.
///   EpsI:  eps evaluated directly from a gradient built at the half node.
///   EpsII: mean of the two nodal eps values built from central differences.
enum class HalfNodeScheme { EpsI, EpsII };

std::string_view to_string(HalfNodeScheme scheme) noexcept;
/// Accepts "eps1"/"eps2" (also "I"/"II").
HalfNodeScheme parse_scheme(std::string_view name);

/// Nodal gradient: central differences, second-order one-sided on boundary faces.
Vec3 nodal_gradient(const ScalarField& phi, const Index3& n);
double nodal_grad_sq(const ScalarField& phi, const Index3& n);

/// eps at the half node n + e_axis/2 with the half-node gradient
/// (two-point along the axis, four-point averaged across).
double half_node_eps_I(const ScalarField& phi, const DielectricModel& model, Axis axis,
                       const Index3& n);

/// eps at the half node n + e_axis/2 as the mean of nodal eps at n and n + e_axis.
double half_node_eps_II(const ScalarField& phi, const DielectricModel& model, Axis axis,
                        const Index3& n);

double half_node_eps(const ScalarField& phi, const DielectricModel& model,
                     HalfNodeScheme scheme, Axis axis, const Index3& n);

/// eps(|grad phi|^2) at every node, gradients from nodal_gradient.
ScalarField nodal_eps(const ScalarField& phi, const DielectricModel& model);

/// Half-node permittivities for all three axes.
///
/// values[a][linear(n)] holds eps at n + e_a/2.  Entries are filled for every n with
/// n[a] <= dim(a) - 2 and both transverse indices interior, which covers every half node
/// touched by an interior stencil.  The remaining entries are NaN.
struct HalfNodeEps {
    std::array<std::vector<double>, 3> values;

    double at(Axis a, std::size_t linear) const noexcept {
        return values[static_cast<int>(a)][linear];
    }
};

HalfNodeEps compute_half_node_eps(const ScalarField& phi, const DielectricModel& model,
                                  HalfNodeScheme scheme);
void compute_half_node_eps(const ScalarField& phi, const DielectricModel& model,
                           HalfNodeScheme scheme, HalfNodeEps& out);

/// Half-node eps from a prescribed nodal permittivity (arithmetic mean of neighbours).
HalfNodeEps half_node_eps_from_nodal(const ScalarField& nodal);

} // namespace npadi
