#pragma once

#include <cstdint>
#include <vector>

#include "msc/matrix.hpp"

namespace msc {

// A definite (not necessarily symmetric) per-agent scaling. sign and margin
// come from the symmetric part: sign is +1 when it is positive definite, -1
// when negative definite; margin is the distance of its eigenvalue nearest
// zero. Plain aggregate so callers can stage inconsistent values in tests.
struct ScalingMatrix {
    std::size_t d = 0;
    Matrix s;
    int sign = 0;
    double margin = 0.0;
};

// Classifies via the extreme eigenvalues of (S + S^T)/2. Eigenvalues within
// 1e-9 of zero are treated as sign-ambiguous and rejected, as are genuinely
// indefinite matrices (IndefiniteScalingError either way).
ScalingMatrix classify_definite(const Matrix& s);

// Planar rotation by theta: definite only while |cos theta| stays clear of
// zero, which classify_definite enforces at use sites.
Matrix rotation2(double theta);

// Rodrigues rotation about a unit axis (unit within 1e-9, else
// ValidationError on field "axis").
Matrix rotation3(const Vec& axis, double theta);

// The scalings of all agents, one shared state dimension d.
struct ScalingSet {
    std::size_t d = 0;
    std::vector<ScalingMatrix> entries;

    // Classifies each raw matrix; all must share one square dimension.
    static ScalingSet classify(const std::vector<Matrix>& raw);

    std::size_t agent_count() const { return entries.size(); }

    Matrix block_state_scaling() const;  // blkdiag(S_i)
    Matrix block_sign() const;           // blkdiag(sign_i * I_d)
    Matrix block_abs() const;            // blkdiag(sign_i * S_i)
    Matrix block_inverse() const;        // blkdiag(S_i^{-1})
    Matrix block_abs_inverse() const;    // blkdiag((sign_i * S_i)^{-1})

    // P = (sum_i (sign_i S_i)^{-1})^{-1}; the weight that turns the signed
    // state sum into the shared agreement point.
    Matrix consensus_weight() const;
};

}  // namespace msc
