#include "npadi/tridiag.hpp"

#include "npadi/errors.hpp"

#include <cmath>

namespace npadi {

void TridiagonalSystem::validate() const {
    const std::size_t n = diag.size();
    if (n == 0) throw ArgumentError("tridiagonal system must have at least one row");
    if (rhs.size() != n || lower.size() + 1 != n || upper.size() + 1 != n)
        throw ArgumentError("tridiagonal coefficient lengths must be n-1, n, n-1 and rhs n");
}

std::vector<double> TridiagonalSystem::apply(std::span<const double> x) const {
    validate();
    const std::size_t n = diag.size();
    if (x.size() != n) throw ArgumentError("vector length mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i - 1] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> x, std::span<double> scratch) {
    const std::size_t n = diag.size();
    // Forward sweep: scratch holds the modified super-diagonal, x the modified rhs.
    double pivot = diag[0];
    if (pivot == 0.0 || !std::isfinite(pivot))
        throw SingularMatrixError("zero pivot in tridiagonal solve at row 0");
    if (n > 1) scratch[0] = upper[0] / pivot;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i - 1] * scratch[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot))
            throw SingularMatrixError("zero pivot in tridiagonal solve at row " +
                                      std::to_string(i));
        if (i + 1 < n) scratch[i] = upper[i] / pivot;
        x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
    sys.validate();
    const std::size_t n = sys.diag.size();
    std::vector<double> x(n);
    std::vector<double> scratch(n);
    solve_tridiagonal(sys.lower, sys.diag, sys.upper, sys.rhs, x, scratch);
    return x;
}

} // namespace npadi
