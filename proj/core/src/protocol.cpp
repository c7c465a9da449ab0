#include "msc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "msc/errors.hpp"

namespace msc {

MscSystem::MscSystem(NetworkGraph graph, ScalingSet scalings)
    : graph_(std::move(graph)), scalings_(std::move(scalings)) {}

MscSystem MscSystem::assemble(NetworkGraph graph, ScalingSet scalings) {
    if (scalings.entries.empty()) {
        throw DimensionError("assemble: at least one scaling required");
    }
    if (scalings.agent_count() != graph.vertex_count()) {
        throw DimensionError("assemble: " + std::to_string(graph.vertex_count()) +
                             " vertices but " + std::to_string(scalings.agent_count()) +
                             " scalings");
    }
    if (!graph.is_connected()) {
        throw DisconnectedGraphError("assemble: the network graph must be connected");
    }

    MscSystem sys(std::move(graph), std::move(scalings));
    const std::size_t d = sys.dimension();
    const Matrix eye_d = Matrix::identity(d);

    sys.laplacian_ = sys.graph_.laplacian();
    sys.laplacian_lifted_ = Matrix::kronecker(sys.laplacian_, eye_d);
    sys.incidence_lifted_ = Matrix::kronecker(sys.graph_.incidence_matrix(), eye_d);
    sys.block_state_scaling_ = sys.scalings_.block_state_scaling();
    sys.block_sign_ = sys.scalings_.block_sign();
    sys.block_abs_ = sys.scalings_.block_abs();
    sys.block_abs_inverse_ = sys.scalings_.block_abs_inverse();
    sys.consensus_weight_ = sys.scalings_.consensus_weight();
    sys.theta_ = sys.block_abs_ * sys.laplacian_lifted_;

    // The all-ones direction in each component must be annihilated exactly:
    // integer Laplacian row sums vanish, so any residual signals assembly
    // corruption rather than roundoff.
    const double scale = 1e-12 * std::max(1.0, sys.theta_.frobenius_norm());
    for (std::size_t k = 0; k < d; ++k) {
        Vec ones_dir(sys.state_size(), 0.0);
        for (std::size_t i = 0; i < sys.agent_count(); ++i) ones_dir[i * d + k] = 1.0;
        const Vec image = sys.theta_.apply(ones_dir);
        for (double v : image) {
            if (std::abs(v) > scale) {
                throw SelfCheckError("assemble: coupling matrix does not annihilate the "
                                     "agreement directions");
            }
        }
    }
    return sys;
}

Vec MscSystem::single_rhs_matrix_form(const Vec& x) const {
    if (x.size() != state_size()) {
        throw DimensionError("single_rhs: state has size " + std::to_string(x.size()) +
                             ", expected " + std::to_string(state_size()));
    }
    const Vec scaled = block_state_scaling_.apply(x);
    const Vec mixed = laplacian_lifted_.apply(scaled);
    Vec u = block_sign_.apply(mixed);
    for (double& v : u) v = -v;
    return u;
}

Vec MscSystem::single_rhs_agent_local(const Vec& x) const {
    if (x.size() != state_size()) {
        throw DimensionError("single_rhs: state has size " + std::to_string(x.size()) +
                             ", expected " + std::to_string(state_size()));
    }
    const std::size_t d = dimension();
    const std::size_t n = agent_count();

    std::vector<Vec> scaled(n, Vec(d, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const ScalingMatrix& m = scalings_.entries[i];
        for (std::size_t r = 0; r < d; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) acc += m.s(r, c) * x[i * d + c];
            scaled[i][r] = acc;
        }
    }

    Vec u(state_size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double sgn = static_cast<double>(scalings_.entries[i].sign);
        for (std::size_t j : graph_.neighbors()[i]) {
            for (std::size_t r = 0; r < d; ++r) {
                u[i * d + r] += sgn * (scaled[j - 1][r] - scaled[i][r]);
            }
        }
    }
    return u;
}

Vec MscSystem::single_rhs(const Vec& x) const {
    Vec u = single_rhs_matrix_form(x);
    const Vec v = single_rhs_agent_local(x);
    const double tol = 1e-9 * std::max({1.0, linf_norm(u), linf_norm(x)});
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (std::abs(u[k] - v[k]) > tol) {
            throw SelfCheckError(
                "single_rhs: operator form and neighbor-sum form disagree by " +
                std::to_string(std::abs(u[k] - v[k])) + " at component " + std::to_string(k));
        }
    }
    return u;
}

Vec MscSystem::double_rhs(const Vec& state, double alpha) const {
    if (!(alpha > 0.0)) throw ValidationError("alpha", "must be positive");
    if (state.size() != 2 * state_size()) {
        throw DimensionError("double_rhs: state has size " + std::to_string(state.size()) +
                             ", expected " + std::to_string(2 * state_size()));
    }
    const std::size_t nd = state_size();
    const Vec positions(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(nd));
    const Vec coupling = single_rhs_matrix_form(positions);

    Vec out(2 * nd, 0.0);
    for (std::size_t k = 0; k < nd; ++k) {
        out[k] = state[nd + k];
        out[nd + k] = coupling[k] - alpha * state[nd + k];
    }
    return out;
}

Vec MscSystem::virtual_consensus_point(const Vec& x) const {
    if (x.size() != state_size()) {
        throw DimensionError("virtual_consensus_point: state has size " +
                             std::to_string(x.size()) + ", expected " +
                             std::to_string(state_size()));
    }
    const std::size_t d = dimension();
    Vec signed_sum(d, 0.0);
    for (std::size_t i = 0; i < agent_count(); ++i) {
        const double sgn = static_cast<double>(scalings_.entries[i].sign);
        for (std::size_t k = 0; k < d; ++k) signed_sum[k] += sgn * x[i * d + k];
    }
    return consensus_weight_.apply(signed_sum);
}

std::vector<Vec> MscSystem::predicted_limit_single(const Vec& x0) const {
    const Vec xa = virtual_consensus_point(x0);
    std::vector<Vec> limits;
    limits.reserve(agent_count());
    for (const ScalingMatrix& m : scalings_.entries) {
        limits.push_back(invert(m.s).apply(xa));
    }
    return limits;
}

std::vector<Vec> MscSystem::predicted_limit_double(const Vec& positions, const Vec& velocities,
                                                   double alpha,
                                                   const SpectralReport& report) const {
    if (!(alpha > 0.0)) throw ValidationError("alpha", "must be positive");
    if (!(alpha > report.alpha_critical_exact)) {
        throw UnstableGainError("damping " + std::to_string(alpha) +
                                " does not exceed the critical value " +
                                std::to_string(report.alpha_critical_exact) +
                                "; the closed loop has no limit");
    }
    const Vec xa_pos = virtual_consensus_point(positions);
    const Vec xa_vel = virtual_consensus_point(velocities);
    const std::size_t d = dimension();
    Vec target(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) target[k] = xa_pos[k] + xa_vel[k] / alpha;

    std::vector<Vec> limits;
    limits.reserve(agent_count());
    for (const ScalingMatrix& m : scalings_.entries) {
        limits.push_back(invert(m.s).apply(target));
    }
    return limits;
}

SpectralReport MscSystem::spectral_report() const {
    SpectralReport report;
    report.eigenvalues = eigenvalues(theta_).eigenvalues;

    const double zero_tol = 1e-8 * std::max(1.0, theta_.frobenius_norm());
    double min_re = 0.0;
    double max_im = 0.0;
    double exact = 0.0;
    bool first_nonzero = true;
    for (const ComplexScalar& ev : report.eigenvalues) {
        if (std::abs(ev) <= zero_tol) {
            ++report.zero_count;
            continue;
        }
        if (ev.real() <= 0.0) {
            throw LemmaViolationError(
                "coupling matrix has a nonzero eigenvalue with nonpositive real part (" +
                std::to_string(ev.real()) + " + " + std::to_string(ev.imag()) +
                "i); the scalings are inconsistent with their recorded signs");
        }
        ++report.positive_real_count;
        if (first_nonzero || ev.real() < min_re) min_re = ev.real();
        first_nonzero = false;
        max_im = std::max(max_im, std::abs(ev.imag()));
        exact = std::max(exact, std::abs(ev.imag()) / std::sqrt(ev.real()));
    }

    if (report.zero_count != dimension()) {
        throw LemmaViolationError("coupling matrix has " + std::to_string(report.zero_count) +
                                  " zero eigenvalues, expected exactly " +
                                  std::to_string(dimension()) +
                                  " for a connected network");
    }
    report.alpha_critical_exact = exact;
    report.alpha_critical_conservative =
        (max_im == 0.0 || first_nonzero) ? 0.0 : max_im / std::sqrt(min_re);
    return report;
}

Matrix MscSystem::edge_form_matrix() const {
    return incidence_lifted_ * block_abs_ * incidence_lifted_.transpose();
}

double MscSystem::scaled_disagreement(const Vec& x) const {
    if (x.size() != state_size()) {
        throw DimensionError("scaled_disagreement: state has size " + std::to_string(x.size()) +
                             ", expected " + std::to_string(state_size()));
    }
    const std::size_t d = dimension();
    const Vec scaled = block_state_scaling_.apply(x);
    double worst = 0.0;
    for (auto [i, j] : graph_.edges()) {
        double acc = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double diff = scaled[(i - 1) * d + k] - scaled[(j - 1) * d + k];
            acc += diff * diff;
        }
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

double MscSystem::lyapunov(const Vec& x) const {
    if (x.size() != state_size()) {
        throw DimensionError("lyapunov: state has size " + std::to_string(x.size()) +
                             ", expected " + std::to_string(state_size()));
    }
    const Vec scaled = block_state_scaling_.apply(x);
    const Vec mixed = laplacian_lifted_.apply(scaled);
    double acc = 0.0;
    for (std::size_t k = 0; k < scaled.size(); ++k) acc += scaled[k] * mixed[k];
    return acc;
}

}  // namespace msc
