#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "msc/matrix.hpp"

namespace msc {

using ComplexScalar = std::complex<double>;

/// Full spectrum of a real square matrix. Eigenvalues carry multiplicity;
/// complex ones occur in conjugate pairs (exact by construction: each pair
/// comes out of one 2x2 deflation block). residual_bound records the
/// backward-error scale the values are good to, relative to the matrix
/// norm.
struct EigenResult {
    std::vector<ComplexScalar> eigenvalues;
    double residual_bound = 0.0;
};

struct EigenOptions {
    /// QR sweep budget as a multiple of the dimension. Exceeding the
    /// budget throws EigenConvergenceError rather than returning a
    /// partial spectrum.
    std::size_t sweeps_per_dimension = 100;
};

/// All eigenvalues of a real square matrix: balance, Householder reduction
/// to Hessenberg form, then Francis double-shift QR iteration.
EigenResult eigenvalues(const Matrix& a, const EigenOptions& options = {});

/// Eigenvalues of a symmetric matrix via cyclic Jacobi, ascending order.
/// The input is symmetrized ((A+A')/2) before iterating, so mildly
/// asymmetric input is treated as its symmetric part.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

/// (lambda_min, lambda_max) of the symmetric part (S+S')/2. Definiteness
/// of a possibly asymmetric matrix is governed by exactly these two
/// numbers.
std::pair<double, double> symmetric_part_min_max_eigs(const Matrix& s);

/// Hurwitz test for p(s) = s^2 + (a+bj)s + c + jd: all roots in the open
/// left half-plane iff a > 0 and a*b*d + a^2*c - d^2 > 0 (a > 0 is forced
/// by the root sum -(a+bj); the inequality is then exact).
bool hurwitz_complex_quadratic(double a, double b, double c, double d);

struct MatchResult {
    bool matched = false;
    /// Largest distance among matched pairs (0 when either side is empty).
    double max_distance = 0.0;
};

/// Greedy minimal-distance bipartite matching between two eigenvalue
/// multisets: candidate pairs are taken in order of increasing distance;
/// the match succeeds when both sides are exhausted together and no
/// matched pair exceeds `tolerance`. Robust to ordering and to
/// conjugate-pair permutation.
MatchResult match_eigenvalue_multisets(const std::vector<ComplexScalar>& a,
                                       const std::vector<ComplexScalar>& b,
                                       double tolerance);

}  // namespace msc
