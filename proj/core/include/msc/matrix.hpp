#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace msc {

using Vec = std::vector<double>;

/// Dense real matrix, row-major. The workhorse for every block assembly
/// and factorization in the library; desk-scale (dimensions well under
/// 200), so no sparsity and no blocking.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    /// Row-major entries; size must equal rows*cols.
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }

    Matrix transpose() const;

    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;
    Matrix operator*(double scalar) const;

    /// Matrix-vector product.
    Vec apply(const Vec& x) const;

    double trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// True if all entries are finite.
    bool finite() const;

    /// Copies `block` into this matrix with top-left corner at (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const Matrix& block);

    static Matrix kronecker(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Inverse via partial-pivot LU. Throws SingularMatrixError when a pivot
/// falls below threshold, DimensionError for non-square input.
inline Matrix operator*(double scalar, const Matrix& m) { return m * scalar; }

Matrix invert(const Matrix& a);

/// Determinant via the same LU factorization.
double determinant(const Matrix& a);

/// Solves a x = b for square a.
Vec solve(const Matrix& a, const Vec& b);

double linf_norm(const Vec& x);
double l2_norm(const Vec& x);
Vec sub(const Vec& a, const Vec& b);

}  // namespace msc
