#include <doctest.h>

#include <cmath>
#include <limits>

#include "msc/errors.hpp"
#include "msc/matrix.hpp"
#include "msc/rng.hpp"

using namespace msc;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("construction and identity") {
    Matrix m(2, 3);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK_FALSE(m.square());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == 0.0);

    const Matrix id = Matrix::identity(3);
    CHECK(id.square());
    CHECK(id.trace() == 3.0);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
}

TEST_CASE("product against a hand-multiplied pair") {
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    const Matrix b = Matrix::from_rows({{5, 6}, {7, 8}});
    const Matrix c = a * b;
    CHECK(c(0, 0) == 19.0);
    CHECK(c(0, 1) == 22.0);
    CHECK(c(1, 0) == 43.0);
    CHECK(c(1, 1) == 50.0);

    const Matrix d = a - b;
    CHECK(d(0, 0) == -4.0);
    const Matrix e = a + b;
    CHECK(e(1, 1) == 12.0);
    const Matrix f = 2.0 * a;
    CHECK(f(1, 0) == 6.0);
    CHECK(max_abs_diff(f, a * 2.0) == 0.0);
}

TEST_CASE("transpose, trace, norms") {
    const Matrix a = Matrix::from_rows({{3, 4}, {0, 0}});
    CHECK(a.frobenius_norm() == 5.0);
    CHECK(a.max_abs() == 4.0);
    const Matrix at = a.transpose();
    CHECK(at(0, 1) == 0.0);
    CHECK(at(1, 0) == 4.0);
    CHECK(a.trace() == 3.0);
}

TEST_CASE("apply multiplies by a vector") {
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    const Vec y = a.apply({1.0, 1.0});
    CHECK(y[0] == 3.0);
    CHECK(y[1] == 7.0);
    CHECK_THROWS_AS((void)a.apply({1.0, 2.0, 3.0}), DimensionError);
}

TEST_CASE("inverse of an integer matrix is exact") {
    // [[2,1],[1,1]] has determinant 1, so the inverse is integer too.
    const Matrix a = Matrix::from_rows({{2, 1}, {1, 1}});
    const Matrix inv = invert(a);
    CHECK(inv(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inv(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(inv(1, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(inv(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(max_abs_diff(a * inv, Matrix::identity(2)) < 1e-14);
    CHECK(determinant(a) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("singular input is rejected") {
    const Matrix a = Matrix::from_rows({{1, 2}, {2, 4}});
    CHECK_THROWS_AS((void)invert(a), SingularMatrixError);
    CHECK_THROWS_AS((void)solve(a, {1.0, 1.0}), SingularMatrixError);
    CHECK_THROWS_AS((void)invert(Matrix(2, 3)), DimensionError);
}

TEST_CASE("solve matches a known solution") {
    const Matrix a = Matrix::from_rows({{2, 1}, {1, 3}});
    // x = (1, 2): b = (4, 7).
    const Vec x = solve(a, {4.0, 7.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("inverse round trip over a random well-conditioned corpus") {
    SplitMix64 rng(101);
    for (int c = 0; c < 25; ++c) {
        const std::size_t n = 2 + rng.below(5);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
            a(i, i) += static_cast<double>(n);  // diagonal dominance
        }
        const Matrix inv = invert(a);
        CHECK(max_abs_diff(a * inv, Matrix::identity(n)) < 1e-12);
        CHECK(max_abs_diff(inv * a, Matrix::identity(n)) < 1e-12);
    }
}

TEST_CASE("determinant through LU agrees with the 2x2 formula") {
    SplitMix64 rng(202);
    for (int c = 0; c < 50; ++c) {
        Matrix a(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.uniform(-2.0, 2.0);
        const double expected = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        CHECK(determinant(a) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("kronecker product structure") {
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    const Matrix b = Matrix::from_rows({{0, 1}, {1, 0}});
    const Matrix k = Matrix::kronecker(a, b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 4);
    // Top-left block is a(0,0) * b.
    CHECK(k(0, 0) == 0.0);
    CHECK(k(0, 1) == 1.0);
    CHECK(k(1, 0) == 1.0);
    // Block (0,1) is a(0,1) * b.
    CHECK(k(0, 3) == 2.0);
    CHECK(k(1, 2) == 2.0);
    // (A kron B)(x kron y) = (Ax) kron (By).
    const Vec x = {1.0, -1.0};
    const Vec y = {2.0, 5.0};
    Vec xy(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) xy[i * 2 + j] = x[i] * y[j];
    const Vec lhs = k.apply(xy);
    const Vec ax = a.apply(x);
    const Vec by = b.apply(y);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(lhs[i * 2 + j] == doctest::Approx(ax[i] * by[j]).epsilon(1e-14));
}

TEST_CASE("set_block writes a sub-matrix in place") {
    Matrix m(4, 4);
    m.set_block(1, 1, Matrix::from_rows({{1, 2}, {3, 4}}));
    CHECK(m(1, 1) == 1.0);
    CHECK(m(2, 2) == 4.0);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(3, 3) == 0.0);
}

TEST_CASE("vector helpers") {
    const Vec a = {3.0, -4.0};
    CHECK(l2_norm(a) == 5.0);
    CHECK(linf_norm(a) == 4.0);
    const Vec d = sub(a, {1.0, 1.0});
    CHECK(d[0] == 2.0);
    CHECK(d[1] == -5.0);
}

TEST_CASE("finite flags non-finite entries") {
    Matrix m = Matrix::identity(2);
    CHECK(m.finite());
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(m.finite());
}

}  // TEST_SUITE
