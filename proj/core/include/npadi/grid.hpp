#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace npadi {

using Vec3 = std::array<double, 3>;

enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

struct Index3 {
    int i = 0;
    int j = 0;
    int k = 0;

    int operator[](Axis a) const { return a == Axis::X ? i : (a == Axis::Y ? j : k); }
    int& operator[](Axis a) { return a == Axis::X ? i : (a == Axis::Y ? j : k); }

    /// Neighbour shifted by `offset` along `a`.
    Index3 shifted(Axis a, int offset) const {
        Index3 r = *this;
        r[a] += offset;
        return r;
    }

    friend bool operator==(const Index3&, const Index3&) = default;
};

/// Uniform Cartesian grid with equal spacing on all three axes.
///
/// Nodes are stored x-fastest: linear index = i + nx * (j + ny * k).
/// Lines along x are contiguous; lines along y and z have strides nx and nx*ny.
class Grid {
public:
    Grid(const Vec3& origin, double h, const std::array<int, 3>& dims);

    const Vec3& origin() const noexcept { return origin_; }
    double h() const noexcept { return h_; }
    const std::array<int, 3>& dims() const noexcept { return dims_; }
    int dim(Axis a) const noexcept { return dims_[static_cast<int>(a)]; }
    int nx() const noexcept { return dims_[0]; }
    int ny() const noexcept { return dims_[1]; }
    int nz() const noexcept { return dims_[2]; }
    std::size_t size() const noexcept;

    /// Distance in the linear index between neighbours along `a`.
    std::ptrdiff_t stride(Axis a) const noexcept;

    bool in_range(const Index3& n) const noexcept;
    void check_index(const Index3& n) const;

    std::size_t linear(const Index3& n) const noexcept {
        return static_cast<std::size_t>(n.i) +
               static_cast<std::size_t>(dims_[0]) *
                   (static_cast<std::size_t>(n.j) +
                    static_cast<std::size_t>(dims_[1]) * static_cast<std::size_t>(n.k));
    }
    Index3 unravel(std::size_t linear) const noexcept;

    /// origin + h*(i,j,k); throws IndexError when out of range.
    Vec3 node_position(const Index3& n) const;
    bool is_boundary(const Index3& n) const;
    /// Same as is_boundary but without the range check.
    bool on_boundary(const Index3& n) const noexcept {
        return n.i == 0 || n.j == 0 || n.k == 0 || n.i == dims_[0] - 1 ||
               n.j == dims_[1] - 1 || n.k == dims_[2] - 1;
    }

    Vec3 upper_corner() const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Vec3 origin_;
    double h_;
    std::array<int, 3> dims_;
};

/// Node-valued real field on a Grid.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid, double fill = 0.0);
    ScalarField(const Grid& grid, std::vector<double> values);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(const Index3& n) noexcept { return values_[grid_.linear(n)]; }
    double operator()(const Index3& n) const noexcept { return values_[grid_.linear(n)]; }
    double& operator()(int i, int j, int k) noexcept { return (*this)({i, j, k}); }
    double operator()(int i, int j, int k) const noexcept { return (*this)({i, j, k}); }
    double& operator[](std::size_t n) noexcept { return values_[n]; }
    double operator[](std::size_t n) const noexcept { return values_[n]; }

    /// Bounds-checked access.
    double at(const Index3& n) const;

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool all_finite() const noexcept;
    double max_abs() const noexcept;

    /// Copy all boundary-node values from `other` (same grid required).
    void copy_boundary_from(const ScalarField& other);

private:
    Grid grid_;
    std::vector<double> values_;
};

template <class Fn>
void for_each_node(const Grid& g, Fn&& fn) {
    for (int k = 0; k < g.nz(); ++k)
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) fn(Index3{i, j, k});
}

template <class Fn>
void for_each_interior(const Grid& g, Fn&& fn) {
    for (int k = 1; k < g.nz() - 1; ++k)
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i) fn(Index3{i, j, k});
}

template <class Fn>
void for_each_boundary(const Grid& g, Fn&& fn) {
    for_each_node(g, [&](const Index3& n) {
        if (g.on_boundary(n)) fn(n);
    });
}

/// Field dump: a text header followed by one value per line in linear order.
///
///     # npadi-field v1
///     dims NX NY NZ
///     h H
///     origin X0 Y0 Z0
///     <value>            (nx*ny*nz lines, x fastest)
///
/// Values are written with 17 significant digits so a read recovers them exactly.
void write_field(std::ostream& os, const ScalarField& field);
ScalarField read_field(std::istream& is);

} // namespace npadi
