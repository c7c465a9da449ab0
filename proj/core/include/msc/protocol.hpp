#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "msc/eigen.hpp"
#include "msc/graph.hpp"
#include "msc/matrix.hpp"
#include "msc/scaling.hpp"

namespace msc {

// Spectrum of the transformed coupling matrix Theta = |S|(L kron I_d),
// plus the two critical damping gains derived from it. Eigenvalues with
// modulus at most 1e-8 * max(1, ||Theta||_F) form the zero cluster; the
// rest must sit strictly in the open right half plane.
struct SpectralReport {
    std::vector<ComplexScalar> eigenvalues;
    std::size_t zero_count = 0;
    std::size_t positive_real_count = 0;
    // Sharp threshold: damping strictly above this stabilizes the
    // double-integrator loop, at or below it does not.
    double alpha_critical_exact = 0.0;
    // max |Im| / sqrt(min Re): never below the exact threshold, cheap to
    // state, and attained only when one eigenvalue is extreme in both axes.
    double alpha_critical_conservative = 0.0;
};

// A network of agents with definite scalings coupled over a connected
// graph. Assembly caches every operator the control laws and diagnostics
// need; spectral work is deferred to spectral_report() so assembly stays
// cheap and never fails on spectrum grounds.
class MscSystem {
public:
    static MscSystem assemble(NetworkGraph graph, ScalingSet scalings);

    const NetworkGraph& graph() const { return graph_; }
    const ScalingSet& scalings() const { return scalings_; }
    std::size_t agent_count() const { return graph_.vertex_count(); }
    std::size_t dimension() const { return scalings_.d; }
    std::size_t state_size() const { return agent_count() * dimension(); }

    const Matrix& laplacian() const { return laplacian_; }
    const Matrix& laplacian_lifted() const { return laplacian_lifted_; }
    const Matrix& theta() const { return theta_; }
    const Matrix& block_state_scaling() const { return block_state_scaling_; }
    const Matrix& block_sign() const { return block_sign_; }
    const Matrix& block_abs() const { return block_abs_; }
    const Matrix& block_abs_inverse() const { return block_abs_inverse_; }
    const Matrix& consensus_weight() const { return consensus_weight_; }

    // Single-integrator control: u_i = sign_i * sum_{j in N_i} (S_j x_j - S_i x_i).
    // Evaluates both the cached-operator form and the neighbor-sum form and
    // cross-checks them (SelfCheckError on disagreement beyond roundoff).
    Vec single_rhs(const Vec& x) const;
    Vec single_rhs_matrix_form(const Vec& x) const;
    Vec single_rhs_agent_local(const Vec& x) const;

    // Double-integrator control on stacked state [positions; velocities]:
    // d(pos) = vel, d(vel) = single_rhs(pos) - alpha * vel. alpha must be
    // positive.
    Vec double_rhs(const Vec& state, double alpha) const;

    // P * sum_i sign_i x_i: constant along single-integrator trajectories
    // and the point every scaled state S_i x_i converges to.
    Vec virtual_consensus_point(const Vec& x) const;

    // Per-agent limits S_i^{-1} x^a for the single-integrator law.
    std::vector<Vec> predicted_limit_single(const Vec& x0) const;

    // Per-agent limits S_i^{-1} (x^a(pos) + x^a(vel)/alpha) for the damped
    // double-integrator law; requires alpha strictly above the sharp
    // threshold in `report` (UnstableGainError otherwise).
    std::vector<Vec> predicted_limit_double(const Vec& positions, const Vec& velocities,
                                            double alpha, const SpectralReport& report) const;

    // Eigenvalues of Theta with the structural checks applied: exactly d
    // zeros and all remaining eigenvalues in the open right half plane
    // (LemmaViolationError otherwise), plus both critical gains.
    SpectralReport spectral_report() const;

    // Edge-space form (H kron I_d) |S| (H kron I_d)^T; shares the nonzero
    // spectrum with Theta.
    Matrix edge_form_matrix() const;

    // max over edges (i,j) of ||S_i x_i - S_j x_j||_2.
    double scaled_disagreement(const Vec& x) const;

    // V(x) = (Sx)^T (L kron I_d) (Sx); nonincreasing along the
    // single-integrator flow.
    double lyapunov(const Vec& x) const;

private:
    MscSystem(NetworkGraph graph, ScalingSet scalings);

    NetworkGraph graph_;
    ScalingSet scalings_;
    Matrix laplacian_;
    Matrix laplacian_lifted_;
    Matrix incidence_lifted_;
    Matrix theta_;
    Matrix block_state_scaling_;
    Matrix block_sign_;
    Matrix block_abs_;
    Matrix block_abs_inverse_;
    Matrix consensus_weight_;
};

}  // namespace msc
