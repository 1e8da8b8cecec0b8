#pragma once

#include "npadi/charge_source.hpp"
#include "npadi/dielectric.hpp"
#include "npadi/grid.hpp"

#include <functional>

namespace npadi {

/// Attractive solvent-solute potential U_att(r) in kcal/mol.
using AttractivePotential = std::function<double(const Vec3&)>;

/// Parameters of G_np = int gamma |grad S| + p S + rho_s (1 - S) U_att.
struct NonpolarParams {
    double gamma = 0.0065;    ///< surface tension, kcal/(mol A^2)
    double pressure = 0.035;  ///< kcal/(mol A^3)
    double rho_s = 0.0334;    ///< solvent number density, 1/A^3
    AttractivePotential att_potential; ///< empty: dispersion term omitted

    void validate() const;
};

/// Weeks-Chandler-Andersen split of a 12-6 potential, summed over atoms: each atom
/// contributes -well_depth inside r_min = 2^(1/6) sigma and 4 w [(s/r)^12 - (s/r)^6]
/// beyond it, with sigma = radius + solvent_radius.
AttractivePotential make_wca_attraction(const ChargeSystem& system, double well_depth = 0.1,
                                        double solvent_radius = 1.4);

struct EnergyReport {
    double G_p = 0.0;      ///< kcal/mol, solvated polar energy
    double G_0 = 0.0;      ///< kcal/mol, vacuum polar energy
    double dG_p = 0.0;     ///< G_p - G_0
    double area = 0.0;     ///< A^2
    double volume = 0.0;   ///< A^3
    double G_np = 0.0;     ///< kcal/mol
    double dG_total = 0.0; ///< G_np + dG_p
    bool dispersion_included = false;
};

/// S = (eps_s - eps(|grad phi|^2)) / (eps_s - eps_m) with nodal central-difference
/// gradients. With no dielectric contrast S is identically zero.
ScalarField surface_function(const ScalarField& phi, const DielectricModel& model);

/// h^3 sum |grad S| (second-order one-sided differences on boundary faces).
double surface_area(const ScalarField& S);

/// h^3 sum S.
double solute_volume(const ScalarField& S);

double nonpolar_energy(const ScalarField& S, const NonpolarParams& params);

/// 1/2 sum_i q_i phi(r_i) kBT, phi interpolated trilinearly at each atom centre.
double polar_energy(const ScalarField& phi, const ChargeSystem& system,
                    const PhysicalConstants& constants);

/// 1/2 sum_i q_i (phi(r_i) - phi_vac(r_i)) kBT. Both fields must share a grid.
double electrostatic_solvation(const ScalarField& phi, const ScalarField& phi_vac,
                               const ChargeSystem& system, const PhysicalConstants& constants);

EnergyReport energy_report(const ScalarField& phi, const ScalarField& phi_vac,
                           const ChargeSystem& system, const DielectricModel& model,
                           const PhysicalConstants& constants, const NonpolarParams& params);

} // namespace npadi
