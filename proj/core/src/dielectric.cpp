#include "npadi/dielectric.hpp"

#include "npadi/errors.hpp"

#include <cmath>
#include <limits>

namespace npadi {

DielectricModel DielectricModel::rational(double eps_m, double eps_s, double alpha, int p,
                                          double grad_scale) {
    DielectricModel m{DielectricKind::Rational, eps_m, eps_s, alpha, p, grad_scale};
    m.validate();
    return m;
}

DielectricModel DielectricModel::exponential(double eps_m, double eps_s, double grad_scale) {
    DielectricModel m{DielectricKind::Exponential, eps_m, eps_s, 0.0, 1, grad_scale};
    m.validate();
    return m;
}

DielectricModel DielectricModel::simplified(double eps_m, double eps_s, double alpha) {
    DielectricModel m{DielectricKind::SimplifiedRational, eps_m, eps_s, alpha, 1, 1.0};
    m.validate();
    return m;
}

DielectricModel DielectricModel::uniform(double eps) {
    DielectricModel m{DielectricKind::Rational, eps, eps, 0.0, 1, 1.0};
    m.validate();
    return m;
}

void DielectricModel::validate() const {
    if (!(eps_m > 0.0) || !std::isfinite(eps_m)) throw ArgumentError("eps_m must be positive");
    // eps_m == eps_s is admitted: it is the linear limit.
    if (!(eps_s >= eps_m) || !std::isfinite(eps_s))
        throw ArgumentError("eps_s must not be smaller than eps_m");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be >= 0");
    if (!(grad_scale > 0.0) || !std::isfinite(grad_scale))
        throw ArgumentError("grad_scale must be positive");
    if (kind == DielectricKind::Rational && p != 1 && p != 2)
        throw ArgumentError("rational dielectric exponent p must be 1 or 2");
}

bool DielectricModel::is_linear() const noexcept {
    if (eps_s == eps_m) return true;
    return kind != DielectricKind::Exponential && alpha == 0.0;
}

double DielectricModel::value(double g) const noexcept {
    const double contrast = eps_s - eps_m;
    switch (kind) {
    case DielectricKind::Rational: {
        const double d = 1.0 + alpha * g / grad_scale;
        return eps_m + contrast / (p == 1 ? d : d * d);
    }
    case DielectricKind::Exponential: return eps_m + contrast * std::exp(-g / grad_scale);
    case DielectricKind::SimplifiedRational: return eps_m + contrast / (1.0 + alpha * g);
    }
    return eps_s;
}

double DielectricModel::derivative(double g) const noexcept {
    const double contrast = eps_s - eps_m;
    switch (kind) {
    case DielectricKind::Rational: {
        const double a = alpha / grad_scale;
        const double d = 1.0 + a * g;
        return p == 1 ? -contrast * a / (d * d) : -2.0 * contrast * a / (d * d * d);
    }
    case DielectricKind::Exponential:
        return -contrast / grad_scale * std::exp(-g / grad_scale);
    case DielectricKind::SimplifiedRational: {
        const double d = 1.0 + alpha * g;
        return -contrast * alpha / (d * d);
    }
    }
    return 0.0;
}

std::string_view to_string(DielectricKind kind) noexcept {
    switch (kind) {
    case DielectricKind::Rational: return "rational";
    case DielectricKind::Exponential: return "exponential";
    case DielectricKind::SimplifiedRational: return "simplified";
    }
    return "?";
}

DielectricKind parse_dielectric_kind(std::string_view name) {
    if (name == "rational") return DielectricKind::Rational;
    if (name == "exponential") return DielectricKind::Exponential;
    if (name == "simplified") return DielectricKind::SimplifiedRational;
    throw ArgumentError("unknown dielectric model '" + std::string(name) + "'");
}

double eval_epsilon(const DielectricModel& model, double grad_sq) {
    if (!(grad_sq >= 0.0) || !std::isfinite(grad_sq))
        throw ArgumentError("squared gradient must be finite and non-negative");
    return model.value(grad_sq);
}

std::string_view to_string(HalfNodeScheme scheme) noexcept {
    return scheme == HalfNodeScheme::EpsI ? "eps1" : "eps2";
}

HalfNodeScheme parse_scheme(std::string_view name) {
    if (name == "eps1" || name == "I" || name == "epsI") return HalfNodeScheme::EpsI;
    if (name == "eps2" || name == "II" || name == "epsII") return HalfNodeScheme::EpsII;
    throw ArgumentError("unknown half-node scheme '" + std::string(name) + "'");
}

namespace {

double axis_derivative(const double* p, std::ptrdiff_t stride, int idx, int dim, double h) {
    if (idx > 0 && idx < dim - 1) return (p[stride] - p[-stride]) / (2.0 * h);
    if (idx == 0) return (-3.0 * p[0] + 4.0 * p[stride] - p[2 * stride]) / (2.0 * h);
    return (3.0 * p[0] - 4.0 * p[-stride] + p[-2 * stride]) / (2.0 * h);
}

void require_half_node(const Grid& g, Axis axis, const Index3& n) {
    if (!g.in_range(n) || !g.in_range(n.shifted(axis, 1)))
        throw StencilError("half node lies outside the grid");
    for (Axis t : kAxes) {
        if (t == axis) continue;
        if (n[t] < 1 || n[t] > g.dim(t) - 2)
            throw StencilError("half-node stencil needs interior transverse indices");
    }
}

} // namespace

Vec3 nodal_gradient(const ScalarField& phi, const Index3& n) {
    const Grid& g = phi.grid();
    g.check_index(n);
    const double* p = phi.values().data() + g.linear(n);
    Vec3 grad{};
    for (Axis a : kAxes)
        grad[static_cast<int>(a)] = axis_derivative(p, g.stride(a), n[a], g.dim(a), g.h());
    return grad;
}

double nodal_grad_sq(const ScalarField& phi, const Index3& n) {
    const Vec3 d = nodal_gradient(phi, n);
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
}

double half_node_eps_I(const ScalarField& phi, const DielectricModel& model, Axis axis,
                       const Index3& n) {
    const Grid& g = phi.grid();
    require_half_node(g, axis, n);
    const double h = g.h();
    const double* p = phi.values().data() + g.linear(n);
    const std::ptrdiff_t sa = g.stride(axis);
    double grad_sq = 0.0;
    for (Axis t : kAxes) {
        double d;
        if (t == axis) {
            d = (p[sa] - p[0]) / h;
        } else {
            const std::ptrdiff_t st = g.stride(t);
            d = (p[st] - p[-st]) / (4.0 * h) + (p[sa + st] - p[sa - st]) / (4.0 * h);
        }
        grad_sq += d * d;
    }
    return model.value(grad_sq);
}

double half_node_eps_II(const ScalarField& phi, const DielectricModel& model, Axis axis,
                        const Index3& n) {
    require_half_node(phi.grid(), axis, n);
    return 0.5 * (model.value(nodal_grad_sq(phi, n)) +
                  model.value(nodal_grad_sq(phi, n.shifted(axis, 1))));
}

double half_node_eps(const ScalarField& phi, const DielectricModel& model,
                     HalfNodeScheme scheme, Axis axis, const Index3& n) {
    return scheme == HalfNodeScheme::EpsI ? half_node_eps_I(phi, model, axis, n)
                                          : half_node_eps_II(phi, model, axis, n);
}

ScalarField nodal_eps(const ScalarField& phi, const DielectricModel& model) {
    const Grid& g = phi.grid();
    ScalarField out(g);
    const double h = g.h();
    const double* base = phi.values().data();
    for_each_node(g, [&](const Index3& n) {
        const std::size_t l = g.linear(n);
        double grad_sq = 0.0;
        for (Axis a : kAxes) {
            const double d = axis_derivative(base + l, g.stride(a), n[a], g.dim(a), h);
            grad_sq += d * d;
        }
        out[l] = model.value(grad_sq);
    });
    return out;
}

namespace {

// Visits every n with n[axis] in [0, dim-2] and interior transverse indices.
template <class Fn>
void for_each_half_node(const Grid& g, Axis axis, Fn&& fn) {
    const int ax = static_cast<int>(axis);
    std::array<int, 3> lo{1, 1, 1};
    std::array<int, 3> hi{g.nx() - 1, g.ny() - 1, g.nz() - 1};
    lo[ax] = 0;
    hi[ax] = g.dim(axis) - 1;
    for (int k = lo[2]; k < hi[2]; ++k)
        for (int j = lo[1]; j < hi[1]; ++j)
            for (int i = lo[0]; i < hi[0]; ++i) fn(Index3{i, j, k});
}

} // namespace

void compute_half_node_eps(const ScalarField& phi, const DielectricModel& model,
                           HalfNodeScheme scheme, HalfNodeEps& out) {
    const Grid& g = phi.grid();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto& v : out.values) v.assign(g.size(), nan);
    const double* p = phi.values().data();
    const double h = g.h();

    if (scheme == HalfNodeScheme::EpsII) {
        const ScalarField eps = nodal_eps(phi, model);
        for (Axis a : kAxes) {
            const std::ptrdiff_t sa = g.stride(a);
            auto& dst = out.values[static_cast<int>(a)];
            for_each_half_node(g, a, [&](const Index3& n) {
                const std::size_t l = g.linear(n);
                dst[l] = 0.5 * (eps[l] + eps[l + sa]);
            });
        }
        return;
    }

    const double inv_h = 1.0 / h;
    const double inv_4h = 0.25 / h;
    for (Axis a : kAxes) {
        const std::ptrdiff_t sa = g.stride(a);
        const Axis b = kAxes[(static_cast<int>(a) + 1) % 3];
        const Axis c = kAxes[(static_cast<int>(a) + 2) % 3];
        const std::ptrdiff_t sb = g.stride(b);
        const std::ptrdiff_t sc = g.stride(c);
        auto& dst = out.values[static_cast<int>(a)];
        for_each_half_node(g, a, [&](const Index3& n) {
            const std::size_t l = g.linear(n);
            const double* q = p + l;
            const double da = (q[sa] - q[0]) * inv_h;
            const double db = (q[sb] - q[-sb] + q[sa + sb] - q[sa - sb]) * inv_4h;
            const double dc = (q[sc] - q[-sc] + q[sa + sc] - q[sa - sc]) * inv_4h;
            dst[l] = model.value(da * da + db * db + dc * dc);
        });
    }
}

HalfNodeEps compute_half_node_eps(const ScalarField& phi, const DielectricModel& model,
                                  HalfNodeScheme scheme) {
    HalfNodeEps out;
    compute_half_node_eps(phi, model, scheme, out);
    return out;
}

HalfNodeEps half_node_eps_from_nodal(const ScalarField& nodal) {
    const Grid& g = nodal.grid();
    HalfNodeEps out;
    for (auto& v : out.values) v.assign(g.size(), std::numeric_limits<double>::quiet_NaN());
    for (Axis a : kAxes) {
        const std::ptrdiff_t sa = g.stride(a);
        auto& dst = out.values[static_cast<int>(a)];
        for_each_half_node(g, a, [&](const Index3& n) {
            const std::size_t l = g.linear(n);
            dst[l] = 0.5 * (nodal[l] + nodal[l + sa]);
        });
    }
    return out;
}

} // namespace npadi
