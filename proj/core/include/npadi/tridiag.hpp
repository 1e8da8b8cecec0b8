#pragma once

#include <span>
#include <vector>

namespace npadi {

/// A x = rhs with A tridiagonal; lower[i] couples row i+1 to column i,
/// upper[i] couples row i to column i+1.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    void validate() const;
    /// A x, for residual checks.
    std::vector<double> apply(std::span<const double> x) const;
};

/// Thomas elimination without pivoting. Throws SingularMatrixError on a zero pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

/// In-place Thomas solve over caller-owned buffers; used by the line sweeps.
///
/// `scratch` must hold n entries. `x` receives the solution and may alias `rhs`.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> x, std::span<double> scratch);

} // namespace npadi
