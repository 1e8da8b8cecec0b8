#include "npadi/grid.hpp"

#include "npadi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace npadi {

Grid::Grid(const Vec3& origin, double h, const std::array<int, 3>& dims)
    : origin_(origin), h_(h), dims_(dims) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw ArgumentError("grid spacing must be positive and finite");
    for (double o : origin)
        if (!std::isfinite(o)) throw ArgumentError("grid origin must be finite");
    for (int d : dims)
        if (d < 4) throw ArgumentError("every grid dimension needs at least 4 nodes");
}

std::size_t Grid::size() const noexcept {
    return static_cast<std::size_t>(dims_[0]) * static_cast<std::size_t>(dims_[1]) *
           static_cast<std::size_t>(dims_[2]);
}

std::ptrdiff_t Grid::stride(Axis a) const noexcept {
    switch (a) {
    case Axis::X: return 1;
    case Axis::Y: return dims_[0];
    case Axis::Z: return static_cast<std::ptrdiff_t>(dims_[0]) * dims_[1];
    }
    return 0;
}

bool Grid::in_range(const Index3& n) const noexcept {
    return n.i >= 0 && n.j >= 0 && n.k >= 0 && n.i < dims_[0] && n.j < dims_[1] &&
           n.k < dims_[2];
}

void Grid::check_index(const Index3& n) const {
    if (!in_range(n)) {
        std::ostringstream msg;
        msg << "node (" << n.i << ',' << n.j << ',' << n.k << ") outside grid " << dims_[0]
            << 'x' << dims_[1] << 'x' << dims_[2];
        throw IndexError(msg.str());
    }
}

Index3 Grid::unravel(std::size_t linear) const noexcept {
    const auto nx = static_cast<std::size_t>(dims_[0]);
    const auto ny = static_cast<std::size_t>(dims_[1]);
    return {static_cast<int>(linear % nx), static_cast<int>((linear / nx) % ny),
            static_cast<int>(linear / (nx * ny))};
}

Vec3 Grid::node_position(const Index3& n) const {
    check_index(n);
    return {origin_[0] + h_ * n.i, origin_[1] + h_ * n.j, origin_[2] + h_ * n.k};
}

bool Grid::is_boundary(const Index3& n) const {
    check_index(n);
    return on_boundary(n);
}

Vec3 Grid::upper_corner() const noexcept {
    return {origin_[0] + h_ * (dims_[0] - 1), origin_[1] + h_ * (dims_[1] - 1),
            origin_[2] + h_ * (dims_[2] - 1)};
}

ScalarField::ScalarField(const Grid& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ArgumentError("field length does not match grid node count");
}

double ScalarField::at(const Index3& n) const {
    grid_.check_index(n);
    return (*this)(n);
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
    }
    return m;
}

void ScalarField::copy_boundary_from(const ScalarField& other) {
    if (!(other.grid() == grid_)) throw ConfigurationError("boundary copy between different grids");
    for_each_boundary(grid_, [&](const Index3& n) { (*this)(n) = other(n); });
}

void write_field(std::ostream& os, const ScalarField& field) {
    const Grid& g = field.grid();
    os << "# npadi-field v1\n";
    os << "dims " << g.nx() << ' ' << g.ny() << ' ' << g.nz() << '\n';
    os << std::setprecision(17);
    os << "h " << g.h() << '\n';
    os << "origin " << g.origin()[0] << ' ' << g.origin()[1] << ' ' << g.origin()[2] << '\n';
    for (double v : field.values()) os << v << '\n';
}

ScalarField read_field(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> std::string {
        if (!std::getline(is, line)) throw ParseError("unexpected end of field dump", lineno + 1);
        ++lineno;
        return line;
    };
    if (next().rfind("# npadi-field v1", 0) != 0) throw ParseError("missing field header", lineno);

    std::array<int, 3> dims{};
    double h = 0.0;
    Vec3 origin{};
    {
        std::istringstream s(next());
        std::string key;
        if (!(s >> key >> dims[0] >> dims[1] >> dims[2]) || key != "dims")
            throw ParseError("bad dims line", lineno);
    }
    {
        std::istringstream s(next());
        std::string key;
        if (!(s >> key >> h) || key != "h") throw ParseError("bad spacing line", lineno);
    }
    {
        std::istringstream s(next());
        std::string key;
        if (!(s >> key >> origin[0] >> origin[1] >> origin[2]) || key != "origin")
            throw ParseError("bad origin line", lineno);
    }
    Grid grid(origin, h, dims);
    std::vector<double> values(grid.size());
    for (auto& v : values) {
        std::istringstream s(next());
        if (!(s >> v)) throw ParseError("bad field value", lineno);
    }
    return ScalarField(grid, std::move(values));
}

} // namespace npadi
