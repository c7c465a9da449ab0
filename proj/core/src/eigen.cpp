#include "msc/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "msc/errors.hpp"

namespace msc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_like(double magnitude, double carrier) {
    return carrier >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Iterative row/column norm equalization by powers of the radix. Diagonal
// similarity, so the spectrum is untouched while the norms QR sees shrink.
void balance(Matrix& a) {
    const std::size_t n = a.rows();
    const double radix = 2.0;
    const double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder similarity reduction to upper Hessenberg form.
void hessenberg(Matrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    std::vector<double> ort(n, 0.0);
    for (std::size_t m = 1; m + 1 < n; ++m) {
        double scale = 0.0;
        for (std::size_t i = m; i < n; ++i) scale += std::abs(h(i, m - 1));
        if (scale == 0.0) continue;

        double hh = 0.0;
        for (std::size_t i = n; i-- > m;) {
            ort[i] = h(i, m - 1) / scale;
            hh += ort[i] * ort[i];
        }
        double g = std::sqrt(hh);
        if (ort[m] > 0.0) g = -g;
        hh -= ort[m] * g;
        ort[m] -= g;

        for (std::size_t j = m; j < n; ++j) {
            double f = 0.0;
            for (std::size_t i = n; i-- > m;) f += ort[i] * h(i, j);
            f /= hh;
            for (std::size_t i = m; i < n; ++i) h(i, j) -= f * ort[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double f = 0.0;
            for (std::size_t j = n; j-- > m;) f += ort[j] * h(i, j);
            f /= hh;
            for (std::size_t j = m; j < n; ++j) h(i, j) -= f * ort[j];
        }
        h(m, m - 1) = scale * g;
        for (std::size_t i = m + 1; i < n; ++i) h(i, m - 1) = 0.0;
    }
    // QR reads only the Hessenberg pattern; clear any reduction leftovers.
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) h(i, j) = 0.0;
}

// Francis double-shift QR on a Hessenberg matrix, eigenvalues only.
// Follows the classic EISPACK hqr sweep structure.
std::vector<ComplexScalar> hqr(Matrix& a, std::size_t sweep_budget) {
    const int n = static_cast<int>(a.rows());
    std::vector<ComplexScalar> eig(static_cast<std::size_t>(n));
    if (n == 0) return eig;

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

    std::size_t sweeps = 0;
    int en = n - 1;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, x = 0.0, y = 0.0, z = 0.0, s = 0.0, w = 0.0;

    while (en >= 0) {
        int its = 0;
        int l = 0;
        do {
            // Scan for a negligible subdiagonal entry splitting the block.
            for (l = en; l >= 1; --l) {
                s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            x = a(en, en);
            if (l == en) {
                eig[static_cast<std::size_t>(en)] = ComplexScalar(x + t, 0.0);
                en -= 1;
            } else if (l == en - 1) {
                y = a(en - 1, en - 1);
                w = a(en, en - 1) * a(en - 1, en);
                p = 0.5 * (y - x);
                q = p * p + w;
                z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + sign_like(z, p);
                    double r1 = x + z;
                    double r2 = (z != 0.0) ? x - w / z : r1;
                    eig[static_cast<std::size_t>(en - 1)] = ComplexScalar(r1, 0.0);
                    eig[static_cast<std::size_t>(en)] = ComplexScalar(r2, 0.0);
                } else {
                    eig[static_cast<std::size_t>(en - 1)] = ComplexScalar(x + p, z);
                    eig[static_cast<std::size_t>(en)] = ComplexScalar(x + p, -z);
                }
                en -= 2;
            } else {
                // Shift data comes from the trailing 2x2 of the active block.
                y = a(en - 1, en - 1);
                w = a(en, en - 1) * a(en - 1, en);
                if (++sweeps > sweep_budget) {
                    throw EigenConvergenceError(
                        "QR iteration exceeded its sweep budget; matrix is "
                        "severely ill-conditioned for eigenvalue extraction");
                }
                if (its != 0 && its % 10 == 0) {
                    // Exceptional shift to break symmetry-induced cycling.
                    t += x;
                    for (int i = 0; i <= en; ++i) a(i, i) -= x;
                    s = std::abs(a(en, en - 1)) + std::abs(a(en - 1, en - 2));
                    y = x = 0.75 * s;
                    w = -0.4375 * s * s;
                }
                ++its;

                int m;
                for (m = en - 2; m >= l; --m) {
                    z = a(m, m);
                    r = x - z;
                    s = y - z;
                    p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                    q = a(m + 1, m + 1) - z - r - s;
                    r = a(m + 2, m + 1);
                    s = std::abs(p) + std::abs(q) + std::abs(r);
                    p /= s;
                    q /= s;
                    r /= s;
                    if (m == l) break;
                    const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                    const double v =
                        std::abs(p) *
                        (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                    if (u <= kEps * v) break;
                }
                for (int i = m + 2; i <= en; ++i) {
                    a(i, i - 2) = 0.0;
                    if (i != m + 2) a(i, i - 3) = 0.0;
                }

                for (int k = m; k <= en - 1; ++k) {
                    if (k != m) {
                        p = a(k, k - 1);
                        q = a(k + 1, k - 1);
                        r = (k != en - 1) ? a(k + 2, k - 1) : 0.0;
                        x = std::abs(p) + std::abs(q) + std::abs(r);
                        if (x != 0.0) {
                            p /= x;
                            q /= x;
                            r /= x;
                        }
                    }
                    s = sign_like(std::sqrt(p * p + q * q + r * r), p);
                    if (s == 0.0) continue;
                    if (k == m) {
                        if (l != m) a(k, k - 1) = -a(k, k - 1);
                    } else {
                        a(k, k - 1) = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for (int j = k; j <= en; ++j) {
                        double pp = a(k, j) + q * a(k + 1, j);
                        if (k != en - 1) {
                            pp += r * a(k + 2, j);
                            a(k + 2, j) -= pp * z;
                        }
                        a(k + 1, j) -= pp * y;
                        a(k, j) -= pp * x;
                    }
                    const int imax = std::min(en, k + 3);
                    for (int i = l; i <= imax; ++i) {
                        double pp = x * a(i, k) + y * a(i, k + 1);
                        if (k != en - 1) {
                            pp += z * a(i, k + 2);
                            a(i, k + 2) -= pp * r;
                        }
                        a(i, k + 1) -= pp * q;
                        a(i, k) -= pp;
                    }
                }
            }
        } while (en >= 0 && l < en - 1);
    }
    return eig;
}

}  // namespace

EigenResult eigenvalues(const Matrix& a, const EigenOptions& options) {
    if (!a.square()) throw DimensionError("eigenvalues: matrix must be square");
    if (!a.finite()) throw DimensionError("eigenvalues: matrix has non-finite entries");

    const std::size_t n = a.rows();
    EigenResult result;
    if (n == 0) return result;

    Matrix work = a;
    balance(work);
    hessenberg(work);
    result.eigenvalues = hqr(work, options.sweeps_per_dimension * n);

    // Backward-error scale of balanced Hessenberg QR; forward accuracy of
    // an individual eigenvalue additionally depends on its conditioning.
    result.residual_bound = 64.0 * kEps * static_cast<double>(n) * a.frobenius_norm();
    return result;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
    if (!a.square()) throw DimensionError("symmetric_eigenvalues: matrix must be square");
    const std::size_t n = a.rows();
    std::vector<double> out;
    if (n == 0) return out;

    // Jacobi operates on the symmetric part; entrywise (a_ij + a_ji)/2 is
    // symmetric in exact arithmetic and in IEEE arithmetic alike.
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = 0.5 * (a(i, j) + a(j, i));

    const double frob = b.frobenius_norm();
    const double stop = kEps * std::max(frob, 1e-300);
    const std::size_t max_sweeps = 50;
    std::size_t sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * b(i, j) * b(i, j);
        if (std::sqrt(off) <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = b(p, q);
                if (std::abs(apq) <= 1e-280 * (std::abs(b(p, p)) + std::abs(b(q, q)) + 1.0)) {
                    b(p, q) = b(q, p) = 0.0;
                    continue;
                }
                const double theta = (b(q, q) - b(p, p)) / (2.0 * apq);
                const double tt =
                    sign_like(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tt * tt + 1.0);
                const double s = tt * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double bpk = b(p, k);
                    const double bqk = b(q, k);
                    b(p, k) = b(k, p) = c * bpk - s * bqk;
                    b(q, k) = b(k, q) = s * bpk + c * bqk;
                }
                const double bpp = b(p, p);
                const double bqq = b(q, q);
                b(p, p) = bpp - tt * apq;
                b(q, q) = bqq + tt * apq;
                b(p, q) = b(q, p) = 0.0;
            }
        }
    }
    if (sweep == max_sweeps) {
        throw EigenConvergenceError("Jacobi iteration failed to converge");
    }

    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = b(i, i);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<double, double> symmetric_part_min_max_eigs(const Matrix& s) {
    if (!s.square()) throw DimensionError("symmetric_part_min_max_eigs: matrix must be square");
    const std::vector<double> eigs = symmetric_eigenvalues(s);
    return {eigs.front(), eigs.back()};
}

bool hurwitz_complex_quadratic(double a, double b, double c, double d) {
    // Roots of s^2 + (a+bj)s + (c+dj) sum to -(a+bj), so a > 0 is necessary;
    // given that, the determinant-style inequality is exact.
    return a > 0.0 && a * b * d + a * a * c - d * d > 0.0;
}

MatchResult match_eigenvalue_multisets(const std::vector<ComplexScalar>& a,
                                       const std::vector<ComplexScalar>& b,
                                       double tolerance) {
    MatchResult res;
    if (a.size() != b.size()) {
        res.matched = false;
        return res;
    }
    const std::size_t k = a.size();
    if (k == 0) {
        res.matched = true;
        return res;
    }

    struct Pair {
        double dist;
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            pairs.push_back({std::abs(a[i] - b[j]), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return std::tie(x.dist, x.i, x.j) < std::tie(y.dist, y.i, y.j);
    });

    std::vector<bool> used_a(k, false), used_b(k, false);
    std::size_t matched = 0;
    for (const Pair& p : pairs) {
        if (used_a[p.i] || used_b[p.j]) continue;
        used_a[p.i] = true;
        used_b[p.j] = true;
        res.max_distance = std::max(res.max_distance, p.dist);
        if (++matched == k) break;
    }
    res.matched = res.max_distance <= tolerance;
    return res;
}

}  // namespace msc
