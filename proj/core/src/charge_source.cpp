#include "npadi/charge_source.hpp"

#include "npadi/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace npadi {

void ChargeSystem::validate() const {
    if (atoms.empty()) throw EmptySystemError("charge system has no atoms");
    for (std::size_t n = 0; n < atoms.size(); ++n) {
        const Atom& a = atoms[n];
        for (double c : a.position)
            if (!std::isfinite(c))
                throw ArgumentError("atom " + std::to_string(n) + " has a non-finite position");
        if (!std::isfinite(a.charge))
            throw ArgumentError("atom " + std::to_string(n) + " has a non-finite charge");
        if (!(a.radius >= 0.0))
            throw ArgumentError("atom " + std::to_string(n) + " has a negative radius");
    }
}

double ChargeSystem::total_charge() const noexcept {
    double q = 0.0;
    for (const Atom& a : atoms) q += a.charge;
    return q;
}

std::array<Vec3, 2> ChargeSystem::bounding_box() const {
    validate();
    Vec3 lo = atoms.front().position;
    Vec3 hi = lo;
    for (const Atom& a : atoms)
        for (int d = 0; d < 3; ++d) {
            lo[d] = std::min(lo[d], a.position[d]);
            hi[d] = std::max(hi[d], a.position[d]);
        }
    return {lo, hi};
}

PhysicalConstants PhysicalConstants::at_temperature(double kelvin) {
    if (!(kelvin > 0.0) || !std::isfinite(kelvin))
        throw ArgumentError("temperature must be positive");
    constexpr double elementary_charge = 1.602176634e-19; // C
    constexpr double boltzmann = 1.380649e-23;            // J/K
    constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
    constexpr double avogadro = 6.02214076e23;
    constexpr double joule_per_kcal = 4184.0;
    constexpr double angstrom_per_metre = 1e10;

    const double kT = boltzmann * kelvin;
    PhysicalConstants c;
    c.temperature = kelvin;
    c.coulomb_prefactor = elementary_charge * elementary_charge /
                          (4.0 * std::numbers::pi * vacuum_permittivity * kT) *
                          angstrom_per_metre;
    c.four_pi_prefactor = 4.0 * std::numbers::pi * c.coulomb_prefactor;
    c.kBT_kcal = kT * avogadro / joule_per_kcal;
    return c;
}

namespace {

bool parse_number(const std::string& token, double& out) {
    const char* begin = token.c_str();
    char* end = nullptr;
    errno = 0;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0' && errno == 0 && std::isfinite(out);
}

} // namespace

ChargeSystem parse_pqr(std::istream& in) {
    ChargeSystem system;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.rfind("ATOM", 0) != 0 && line.rfind("HETATM", 0) != 0) continue;
        std::istringstream ss(line);
        std::vector<std::string> tokens;
        for (std::string t; ss >> t;) tokens.push_back(std::move(t));
        if (tokens.size() < 6) throw ParseError("ATOM record has too few fields", lineno);
        const std::size_t first = tokens.size() - 5;
        std::array<double, 5> v{};
        static constexpr const char* names[] = {"x", "y", "z", "charge", "radius"};
        for (std::size_t n = 0; n < 5; ++n)
            if (!parse_number(tokens[first + n], v[n]))
                throw ParseError(std::string("non-numeric ") + names[n] + " '" +
                                     tokens[first + n] + "'",
                                 lineno);
        if (v[4] < 0.0) throw ParseError("negative radius", lineno);
        system.atoms.push_back(Atom{{v[0], v[1], v[2]}, v[3], v[4]});
    }
    if (system.atoms.empty()) throw EmptySystemError("PQR input contains no ATOM/HETATM records");
    return system;
}

ChargeSystem parse_pqr_string(const std::string& text) {
    std::istringstream in(text);
    return parse_pqr(in);
}

ChargeSystem load_pqr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open PQR file '" + path + "'");
    try {
        return parse_pqr(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    } catch (const EmptySystemError& e) {
        throw EmptySystemError(path + ": " + e.what());
    }
}

namespace {

TrilinearStencil make_stencil(const Grid& grid, const Vec3& position, std::size_t atom_index,
                              double lo, int hi_margin) {
    TrilinearStencil s;
    std::array<int, 3> cell{};
    std::array<double, 3> frac{};
    for (int d = 0; d < 3; ++d) {
        const double u = (position[d] - grid.origin()[d]) / grid.h();
        const double hi = grid.dims()[d] - 1 - hi_margin;
        if (!(u >= lo && u <= hi)) {
            std::ostringstream msg;
            msg << "atom " << atom_index << " at (" << position[0] << ", " << position[1] << ", "
                << position[2] << ") is outside the usable grid region";
            throw PlacementError(msg.str(), atom_index);
        }
        int c = static_cast<int>(std::floor(u));
        c = std::min(c, grid.dims()[d] - 2 - hi_margin);
        cell[d] = c;
        frac[d] = u - c;
    }
    int n = 0;
    for (int dk = 0; dk < 2; ++dk)
        for (int dj = 0; dj < 2; ++dj)
            for (int di = 0; di < 2; ++di, ++n) {
                s.nodes[n] = grid.linear({cell[0] + di, cell[1] + dj, cell[2] + dk});
                s.weights[n] = (di ? frac[0] : 1.0 - frac[0]) * (dj ? frac[1] : 1.0 - frac[1]) *
                               (dk ? frac[2] : 1.0 - frac[2]);
            }
    return s;
}

} // namespace

TrilinearStencil interior_stencil(const Grid& grid, const Vec3& position, std::size_t atom_index) {
    return make_stencil(grid, position, atom_index, 1.0, 1);
}

double trilinear_interpolate(const ScalarField& field, const Vec3& position,
                             std::size_t atom_index) {
    const TrilinearStencil s = make_stencil(field.grid(), position, atom_index, 0.0, 0);
    double v = 0.0;
    for (int n = 0; n < 8; ++n) v += s.weights[n] * field[s.nodes[n]];
    return v;
}

ScalarField distribute_charges(const ChargeSystem& system, const Grid& grid,
                               const PhysicalConstants& constants) {
    system.validate();
    ScalarField q(grid);
    for (std::size_t a = 0; a < system.atoms.size(); ++a) {
        const TrilinearStencil s = interior_stencil(grid, system.atoms[a].position, a);
        for (int n = 0; n < 8; ++n) q[s.nodes[n]] += system.atoms[a].charge * s.weights[n];
    }
    const double scale = constants.four_pi_prefactor / (grid.h() * grid.h() * grid.h());
    for (double& v : q.values()) v *= scale;
    return q;
}

double spread_charge_total(const ChargeSystem& system, const Grid& grid) {
    system.validate();
    double total = 0.0;
    for (std::size_t a = 0; a < system.atoms.size(); ++a) {
        const TrilinearStencil s = interior_stencil(grid, system.atoms[a].position, a);
        for (int n = 0; n < 8; ++n) total += system.atoms[a].charge * s.weights[n];
    }
    return total;
}

namespace {

double coulomb_at(const ChargeSystem& system, const Vec3& r, double eps, double prefactor,
                  bool& singular) {
    double v = 0.0;
    singular = false;
    for (const Atom& a : system.atoms) {
        const double dx = r[0] - a.position[0];
        const double dy = r[1] - a.position[1];
        const double dz = r[2] - a.position[2];
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (d == 0.0) {
            singular = true;
            continue;
        }
        v += a.charge / d;
    }
    return prefactor * v / eps;
}

} // namespace

ScalarField dirichlet_boundary(const ChargeSystem& system, const Grid& grid, double eps_s,
                               const PhysicalConstants& constants) {
    system.validate();
    if (!(eps_s > 0.0)) throw ArgumentError("eps_s must be positive");
    ScalarField phi(grid);
    for_each_boundary(grid, [&](const Index3& n) {
        bool singular = false;
        phi(n) = coulomb_at(system, grid.node_position(n), eps_s, constants.coulomb_prefactor,
                            singular);
        if (singular) throw SingularBoundaryError("a point charge coincides with a boundary node");
    });
    return phi;
}

ScalarField coulomb_field(const ChargeSystem& system, const Grid& grid, double eps,
                          const PhysicalConstants& constants) {
    system.validate();
    if (!(eps > 0.0)) throw ArgumentError("permittivity must be positive");
    ScalarField phi(grid);
    std::vector<std::size_t> singular_nodes;
    for_each_node(grid, [&](const Index3& n) {
        bool singular = false;
        phi(n) = coulomb_at(system, grid.node_position(n), eps, constants.coulomb_prefactor,
                            singular);
        if (singular) {
            if (grid.on_boundary(n))
                throw SingularBoundaryError("a point charge coincides with a boundary node");
            singular_nodes.push_back(grid.linear(n));
        }
    });
    for (std::size_t l : singular_nodes) {
        const Index3 n = grid.unravel(l);
        double sum = 0.0;
        for (Axis a : kAxes) sum += phi(n.shifted(a, 1)) + phi(n.shifted(a, -1));
        phi[l] = sum / 6.0;
    }
    return phi;
}

Grid grid_for_system(const ChargeSystem& system, double h, double padding) {
    if (!(h > 0.0)) throw ArgumentError("grid spacing must be positive");
    if (!(padding > 0.0)) throw ArgumentError("padding must be positive");
    const auto [lo, hi] = system.bounding_box();
    Vec3 origin{};
    std::array<int, 3> dims{};
    for (int d = 0; d < 3; ++d) {
        // Nodes sit at (m + 1/2) h so that atoms at lattice points fall on cell centres.
        const double first = std::floor((lo[d] - padding) / h - 0.5);
        const double last = std::ceil((hi[d] + padding) / h - 0.5);
        origin[d] = (first + 0.5) * h;
        dims[d] = std::max(4, static_cast<int>(last - first) + 1);
    }
    return Grid(origin, h, dims);
}

} // namespace npadi
