#include "msc/scaling.hpp"

#include <cmath>
#include <string>

#include "msc/eigen.hpp"
#include "msc/errors.hpp"

namespace msc {

namespace {
constexpr double kDefiniteBand = 1e-9;
}

ScalingMatrix classify_definite(const Matrix& s) {
    if (!s.square()) throw DimensionError("classify_definite: matrix must be square");
    if (s.rows() == 0) throw DimensionError("classify_definite: matrix must be nonempty");
    if (!s.finite()) throw IndefiniteScalingError("scaling has non-finite entries");

    const auto [lo, hi] = symmetric_part_min_max_eigs(s);
    ScalingMatrix out;
    out.d = s.rows();
    out.s = s;
    if (lo > kDefiniteBand) {
        out.sign = 1;
        out.margin = lo;
    } else if (hi < -kDefiniteBand) {
        out.sign = -1;
        out.margin = -hi;
    } else {
        throw IndefiniteScalingError(
            "scaling is not definite: symmetric part eigenvalues span [" + std::to_string(lo) +
            ", " + std::to_string(hi) + "] which touches the band +/-1e-9");
    }
    return out;
}

Matrix rotation2(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return Matrix::from_rows({{c, -s}, {s, c}});
}

Matrix rotation3(const Vec& axis, double theta) {
    if (axis.size() != 3) throw ValidationError("axis", "must have exactly 3 components");
    const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(len - 1.0) > 1e-9) {
        throw ValidationError("axis", "must be a unit vector (norm deviates by more than 1e-9)");
    }
    const double x = axis[0], y = axis[1], z = axis[2];
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double k = 1.0 - c;
    return Matrix::from_rows({{c + x * x * k, x * y * k - z * s, x * z * k + y * s},
                              {y * x * k + z * s, c + y * y * k, y * z * k - x * s},
                              {z * x * k - y * s, z * y * k + x * s, c + z * z * k}});
}

ScalingSet ScalingSet::classify(const std::vector<Matrix>& raw) {
    if (raw.empty()) throw ValidationError("scalings", "at least one agent required");
    ScalingSet set;
    set.d = raw.front().rows();
    set.entries.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].rows() != set.d || raw[i].cols() != set.d) {
            throw DimensionError("scalings[" + std::to_string(i) +
                                 "]: all scalings must be square with one shared dimension");
        }
        set.entries.push_back(classify_definite(raw[i]));
    }
    return set;
}

namespace {

template <typename BlockFn>
Matrix assemble_blocks(const ScalingSet& set, BlockFn&& block) {
    const std::size_t n = set.agent_count();
    const std::size_t d = set.d;
    Matrix out(n * d, n * d);
    for (std::size_t i = 0; i < n; ++i) out.set_block(i * d, i * d, block(set.entries[i]));
    return out;
}

}  // namespace

Matrix ScalingSet::block_state_scaling() const {
    return assemble_blocks(*this, [](const ScalingMatrix& m) { return m.s; });
}

Matrix ScalingSet::block_sign() const {
    return assemble_blocks(*this, [](const ScalingMatrix& m) {
        return static_cast<double>(m.sign) * Matrix::identity(m.d);
    });
}

Matrix ScalingSet::block_abs() const {
    return assemble_blocks(*this,
                           [](const ScalingMatrix& m) { return static_cast<double>(m.sign) * m.s; });
}

Matrix ScalingSet::block_inverse() const {
    return assemble_blocks(*this, [](const ScalingMatrix& m) { return invert(m.s); });
}

Matrix ScalingSet::block_abs_inverse() const {
    return assemble_blocks(*this, [](const ScalingMatrix& m) {
        return invert(static_cast<double>(m.sign) * m.s);
    });
}

Matrix ScalingSet::consensus_weight() const {
    if (entries.empty()) throw ValidationError("scalings", "at least one agent required");
    Matrix acc(d, d);
    for (const ScalingMatrix& m : entries) {
        acc = acc + invert(static_cast<double>(m.sign) * m.s);
    }
    return invert(acc);
}

}  // namespace msc
