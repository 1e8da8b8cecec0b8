#pragma once

#include "npadi/grid.hpp"

#include <array>
#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace npadi {

struct Atom {
    Vec3 position{};
    double charge = 0.0; ///< units of the elementary charge
    double radius = 0.0; ///< van der Waals radius, angstrom
};

struct ChargeSystem {
    std::vector<Atom> atoms;

    /// Throws EmptySystemError / ArgumentError.
    void validate() const;
    double total_charge() const noexcept;
    /// Lower and upper corners of the atom-centre bounding box.
    std::array<Vec3, 2> bounding_box() const;
};

/// Unit conversions derived from CODATA 2018 exact/recommended values.
///
/// The potential is carried in units of k_B T / e_c and lengths in angstrom, so
/// the Coulomb prefactor e_c^2 / (4 pi eps_0 k_B T) is the vacuum Bjerrum length.
struct PhysicalConstants {
    double temperature = 298.15;   ///< K
    double coulomb_prefactor = 0;  ///< angstrom
    double four_pi_prefactor = 0;  ///< 4 pi * coulomb_prefactor
    double kBT_kcal = 0;           ///< kcal/mol

    static PhysicalConstants at_temperature(double kelvin = 298.15);
};

ChargeSystem parse_pqr(std::istream& in);
ChargeSystem parse_pqr_string(const std::string& text);
ChargeSystem load_pqr(const std::string& path);

/// The eight corner nodes and trilinear weights of the cell holding `position`.
struct TrilinearStencil {
    std::array<std::size_t, 8> nodes{};
    std::array<double, 8> weights{};
};

/// Requires 1 <= (x - origin)/h <= dim - 2 on every axis so no weight lands on a
/// boundary node. Throws PlacementError naming `atom_index` otherwise.
TrilinearStencil interior_stencil(const Grid& grid, const Vec3& position, std::size_t atom_index);

/// Trilinear interpolation of a nodal field; the point only has to lie in the grid.
double trilinear_interpolate(const ScalarField& field, const Vec3& position,
                             std::size_t atom_index = 0);

/// Source density: four_pi_prefactor * sum_j q_j w_j(node) / h^3.
ScalarField distribute_charges(const ChargeSystem& system, const Grid& grid,
                               const PhysicalConstants& constants);

/// Sum over nodes of the unscaled trilinear charge weights (equals the total charge).
double spread_charge_total(const ChargeSystem& system, const Grid& grid);

/// Superposed Coulomb potential coulomb_prefactor * sum q_i / (eps |r - r_i|) on the
/// boundary nodes; interior nodes are zero. Throws SingularBoundaryError when a charge
/// sits on a boundary node.
ScalarField dirichlet_boundary(const ChargeSystem& system, const Grid& grid, double eps_s,
                               const PhysicalConstants& constants);

/// The same Coulomb superposition at every node. A node that coincides with an atom
/// takes the mean of its six neighbours.
ScalarField coulomb_field(const ChargeSystem& system, const Grid& grid, double eps,
                          const PhysicalConstants& constants);

/// Box around the atom centres extended by `padding` on every side. Node coordinates
/// are half-integer multiples of h, so an atom at the origin sits at a cell centre
/// rather than on a node (where the central-difference gradient would vanish).
Grid grid_for_system(const ChargeSystem& system, double h, double padding);

} // namespace npadi
