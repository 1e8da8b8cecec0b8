#include "npadi/errors.hpp"
#include "npadi/tridiag.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace npadi;

namespace {

// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(const TridiagonalSystem& s) {
    const std::size_t n = s.diag.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = s.diag[i];
        if (i + 1 < n) {
            a[i][i + 1] = s.upper[i];
            a[i + 1][i] = s.lower[i];
        }
        a[i][n] = s.rhs[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        std::swap(a[c], a[p]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double v = a[i][n];
        for (std::size_t k = i + 1; k < n; ++k) v -= a[i][k] * x[k];
        x[i] = v / a[i][i];
    }
    return x;
}

TridiagonalSystem random_dominant(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TridiagonalSystem s;
    s.lower.resize(n - 1);
    s.upper.resize(n - 1);
    s.diag.resize(n);
    s.rhs.resize(n);
    for (auto& v : s.lower) v = u(rng);
    for (auto& v : s.upper) v = u(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const double off = (i > 0 ? std::abs(s.lower[i - 1]) : 0.0) +
                           (i + 1 < n ? std::abs(s.upper[i]) : 0.0);
        s.diag[i] = (off + 0.1 + std::abs(u(rng))) * (u(rng) < 0 ? -1.0 : 1.0);
        s.rhs[i] = 10 * u(rng);
    }
    return s;
}

} // namespace

TEST_CASE("identity system returns the right-hand side") {
    TridiagonalSystem s{{0, 0}, {1, 1, 1}, {0, 0}, {3, -2, 7}};
    CHECK(solve_tridiagonal(s) == std::vector<double>{3, -2, 7});
}

TEST_CASE("2x2 example") {
    // [2 1; 1 2] x = [3 3]
    TridiagonalSystem s{{1}, {2, 2}, {1}, {3, 3}};
    const auto x = solve_tridiagonal(s);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("single equation") {
    TridiagonalSystem s{{}, {4}, {}, {2}};
    CHECK(solve_tridiagonal(s)[0] == 0.5);
}

TEST_CASE("agrees with dense elimination") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        const auto s = random_dominant(rng, 2 + t * 3);
        const auto x = solve_tridiagonal(s);
        const auto ref = dense_solve(s);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-11));
        const auto r = s.apply(x);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(r[i] == doctest::Approx(s.rhs[i]).epsilon(1e-11));
    }
}

TEST_CASE("solution is linear in the right-hand side") {
    std::mt19937_64 rng(23);
    auto s1 = random_dominant(rng, 40);
    auto s2 = s1;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : s2.rhs) v = u(rng);
    auto s3 = s1;
    for (std::size_t i = 0; i < s3.rhs.size(); ++i) s3.rhs[i] = 2.0 * s1.rhs[i] - 3.0 * s2.rhs[i];
    const auto x1 = solve_tridiagonal(s1), x2 = solve_tridiagonal(s2), x3 = solve_tridiagonal(s3);
    for (std::size_t i = 0; i < x3.size(); ++i)
        CHECK(x3[i] == doctest::Approx(2.0 * x1[i] - 3.0 * x2[i]).epsilon(1e-12));
}

TEST_CASE("span overload matches and may alias the right-hand side") {
    std::mt19937_64 rng(29);
    const auto s = random_dominant(rng, 30);
    const auto ref = solve_tridiagonal(s);
    std::vector<double> x = s.rhs, scratch(30);
    solve_tridiagonal(s.lower, s.diag, s.upper, x, x, scratch);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == ref[i]);
}

TEST_CASE("invalid systems") {
    CHECK_THROWS_AS(solve_tridiagonal(TridiagonalSystem{{0}, {0, 1}, {0}, {1, 1}}), SingularMatrixError);
    // Second pivot vanishes: 1 - 1*1/1 = 0.
    CHECK_THROWS_AS(solve_tridiagonal(TridiagonalSystem{{1}, {1, 1}, {1}, {1, 1}}), SingularMatrixError);
    CHECK_THROWS_AS(solve_tridiagonal(TridiagonalSystem{{1, 1}, {1, 1}, {1}, {1, 1}}), ArgumentError);
    CHECK_THROWS_AS(solve_tridiagonal(TridiagonalSystem{{}, {}, {}, {}}), ArgumentError);
}
