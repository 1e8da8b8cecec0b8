#include "npadi/solvation.hpp"

#include "npadi/errors.hpp"

#include <cmath>

namespace npadi {

void NonpolarParams::validate() const {
    if (!(gamma >= 0.0) || !(pressure >= 0.0) || !(rho_s >= 0.0))
        throw ArgumentError("nonpolar parameters must be non-negative");
}

AttractivePotential make_wca_attraction(const ChargeSystem& system, double well_depth,
                                        double solvent_radius) {
    system.validate();
    if (!(well_depth >= 0.0) || !(solvent_radius >= 0.0))
        throw ArgumentError("WCA parameters must be non-negative");
    return [atoms = system.atoms, well_depth, solvent_radius](const Vec3& r) {
        double u = 0.0;
        for (const Atom& a : atoms) {
            const double sigma = a.radius + solvent_radius;
            const double r_min = std::pow(2.0, 1.0 / 6.0) * sigma;
            const double dx = r[0] - a.position[0];
            const double dy = r[1] - a.position[1];
            const double dz = r[2] - a.position[2];
            const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
            if (d < r_min) {
                u -= well_depth;
            } else {
                const double s6 = std::pow(sigma / d, 6);
                u += 4.0 * well_depth * (s6 * s6 - s6);
            }
        }
        return u;
    };
}

ScalarField surface_function(const ScalarField& phi, const DielectricModel& model) {
    model.validate();
    const double contrast = model.eps_s - model.eps_m;
    if (contrast == 0.0) return ScalarField(phi.grid(), 0.0);
    ScalarField s = nodal_eps(phi, model);
    for (double& v : s.values()) v = (model.eps_s - v) / contrast;
    return s;
}

double surface_area(const ScalarField& S) {
    const Grid& g = S.grid();
    double sum = 0.0;
    for_each_node(g, [&](const Index3& n) {
        const Vec3 d = nodal_gradient(S, n);
        sum += std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    });
    return sum * g.h() * g.h() * g.h();
}

double solute_volume(const ScalarField& S) {
    const double h = S.grid().h();
    double sum = 0.0;
    for (double v : S.values()) sum += v;
    return sum * h * h * h;
}

double nonpolar_energy(const ScalarField& S, const NonpolarParams& params) {
    params.validate();
    double energy = params.gamma * surface_area(S) + params.pressure * solute_volume(S);
    if (params.att_potential && params.rho_s > 0.0) {
        const Grid& g = S.grid();
        double sum = 0.0;
        for_each_node(g, [&](const Index3& n) {
            sum += (1.0 - S(n)) * params.att_potential(g.node_position(n));
        });
        energy += params.rho_s * sum * g.h() * g.h() * g.h();
    }
    return energy;
}

double polar_energy(const ScalarField& phi, const ChargeSystem& system,
                    const PhysicalConstants& constants) {
    system.validate();
    double sum = 0.0;
    for (std::size_t a = 0; a < system.atoms.size(); ++a)
        sum += system.atoms[a].charge * trilinear_interpolate(phi, system.atoms[a].position, a);
    return 0.5 * sum * constants.kBT_kcal;
}

double electrostatic_solvation(const ScalarField& phi, const ScalarField& phi_vac,
                               const ChargeSystem& system, const PhysicalConstants& constants) {
    if (!(phi.grid() == phi_vac.grid()))
        throw ConfigurationError("solvated and vacuum potentials live on different grids");
    system.validate();
    double sum = 0.0;
    for (std::size_t a = 0; a < system.atoms.size(); ++a) {
        const Vec3& r = system.atoms[a].position;
        sum += system.atoms[a].charge *
               (trilinear_interpolate(phi, r, a) - trilinear_interpolate(phi_vac, r, a));
    }
    return 0.5 * sum * constants.kBT_kcal;
}

EnergyReport energy_report(const ScalarField& phi, const ScalarField& phi_vac,
                           const ChargeSystem& system, const DielectricModel& model,
                           const PhysicalConstants& constants, const NonpolarParams& params) {
    EnergyReport r;
    r.G_p = polar_energy(phi, system, constants);
    r.G_0 = polar_energy(phi_vac, system, constants);
    r.dG_p = electrostatic_solvation(phi, phi_vac, system, constants);
    const ScalarField S = surface_function(phi, model);
    r.area = surface_area(S);
    r.volume = solute_volume(S);
    r.G_np = nonpolar_energy(S, params);
    r.dispersion_included = static_cast<bool>(params.att_potential) && params.rho_s > 0.0;
    r.dG_total = r.G_np + r.dG_p;
    return r;
}

} // namespace npadi
