#include "msc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "msc/eigen.hpp"
#include "msc/errors.hpp"

namespace msc {

namespace {

constexpr double kStepGuard = 2.5;
constexpr double kOverflowGuard = 1e12;

void validate_config(const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw ValidationError("dt", "must be positive");
    if (!(cfg.t_end > 0.0)) throw ValidationError("t_end", "must be positive");
    if (cfg.dt > cfg.t_end) throw ValidationError("dt", "must not exceed t_end");
    if (cfg.record_every < 1) throw ValidationError("record_every", "must be at least 1");
}

std::size_t step_count(const IntegratorConfig& cfg) {
    const long long steps = std::llround(cfg.t_end / cfg.dt);
    return static_cast<std::size_t>(std::max(1LL, steps));
}

double spectral_radius(const std::vector<ComplexScalar>& eigs) {
    double rho = 0.0;
    for (const ComplexScalar& ev : eigs) rho = std::max(rho, std::abs(ev));
    return rho;
}

// Largest closed-loop mode magnitude: each eigenvalue mu of the coupling
// matrix contributes the roots of s^2 + alpha s + mu.
double companion_spectral_radius(const std::vector<ComplexScalar>& coupling_eigs, double alpha) {
    double rho = 0.0;
    for (const ComplexScalar& mu : coupling_eigs) {
        const ComplexScalar disc = std::sqrt(ComplexScalar(alpha * alpha, 0.0) - 4.0 * mu);
        const ComplexScalar r1 = 0.5 * (-alpha + disc);
        const ComplexScalar r2 = 0.5 * (-alpha - disc);
        rho = std::max({rho, std::abs(r1), std::abs(r2)});
    }
    return rho;
}

bool state_ok(const Vec& x) {
    for (double v : x) {
        if (!std::isfinite(v) || std::abs(v) > kOverflowGuard) return false;
    }
    return true;
}

double max_agent_norm(const Vec& x, std::size_t n, std::size_t d) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < d; ++k) acc += x[i * d + k] * x[i * d + k];
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

double euclidean(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

}  // namespace

Trajectory integrate_single(const MscSystem& sys, const Vec& x0, const IntegratorConfig& cfg) {
    validate_config(cfg);
    if (x0.size() != sys.state_size()) {
        throw DimensionError("integrate_single: initial state has size " +
                             std::to_string(x0.size()) + ", expected " +
                             std::to_string(sys.state_size()));
    }
    const double rho = spectral_radius(eigenvalues(sys.theta()).eigenvalues);
    if (cfg.dt * rho >= kStepGuard) {
        throw StepTooLargeError("dt * spectral radius = " + std::to_string(cfg.dt * rho) +
                                " exceeds the stability heuristic bound " +
                                std::to_string(kStepGuard));
    }

    // One cross-checked evaluation up front; the loop then uses the cached
    // operator form, which the check just certified against the
    // neighbor-sum form.
    (void)sys.single_rhs(x0);

    const std::size_t steps = step_count(cfg);
    Trajectory traj;
    traj.kind = TrajectoryKind::SingleIntegrator;
    traj.agent_count = sys.agent_count();
    traj.dimension = sys.dimension();

    const Vec xa0 = sys.virtual_consensus_point(x0);
    Vec x = x0;

    auto record = [&](std::size_t k) {
        traj.times.push_back(static_cast<double>(k) * cfg.dt);
        traj.positions.push_back(x);
        traj.lyapunov.push_back(sys.lyapunov(x));
        traj.xa_drift.push_back(euclidean(sys.virtual_consensus_point(x), xa0));
        traj.disagreement.push_back(sys.scaled_disagreement(x));
    };
    record(0);

    const double h = cfg.dt;
    Vec k1, k2, k3, k4, tmp(x.size());
    for (std::size_t k = 1; k <= steps; ++k) {
        k1 = sys.single_rhs_matrix_form(x);
        for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        k2 = sys.single_rhs_matrix_form(tmp);
        for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        k3 = sys.single_rhs_matrix_form(tmp);
        for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + h * k3[i];
        k4 = sys.single_rhs_matrix_form(tmp);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if (!state_ok(x)) {
            throw NonFiniteError("integrate_single: state crossed the overflow guard at t = " +
                                 std::to_string(static_cast<double>(k) * cfg.dt) +
                                 "; this dynamics is contracting, so the configuration is bad");
        }
        if (k % cfg.record_every == 0 || k == steps) record(k);
    }
    return traj;
}

Trajectory integrate_double(const MscSystem& sys, const Vec& positions0, const Vec& velocities0,
                            double alpha, const IntegratorConfig& cfg) {
    validate_config(cfg);
    if (!(alpha > 0.0)) throw ValidationError("alpha", "must be positive");
    const std::size_t nd = sys.state_size();
    if (positions0.size() != nd || velocities0.size() != nd) {
        throw DimensionError("integrate_double: initial positions/velocities must both have size " +
                             std::to_string(nd));
    }
    const double rho =
        companion_spectral_radius(eigenvalues(sys.theta()).eigenvalues, alpha);
    if (cfg.dt * rho >= kStepGuard) {
        throw StepTooLargeError("dt * companion spectral radius = " +
                                std::to_string(cfg.dt * rho) +
                                " exceeds the stability heuristic bound " +
                                std::to_string(kStepGuard));
    }

    const std::size_t steps = step_count(cfg);
    Trajectory traj;
    traj.kind = TrajectoryKind::DoubleIntegrator;
    traj.agent_count = sys.agent_count();
    traj.dimension = sys.dimension();

    Vec state(2 * nd);
    std::copy(positions0.begin(), positions0.end(), state.begin());
    std::copy(velocities0.begin(), velocities0.end(),
              state.begin() + static_cast<std::ptrdiff_t>(nd));
    const Vec xa0 = sys.virtual_consensus_point(positions0);

    auto record = [&](std::size_t k) {
        Vec pos(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(nd));
        Vec vel(state.begin() + static_cast<std::ptrdiff_t>(nd), state.end());
        traj.times.push_back(static_cast<double>(k) * cfg.dt);
        traj.lyapunov.push_back(sys.lyapunov(pos));
        traj.xa_drift.push_back(euclidean(sys.virtual_consensus_point(pos), xa0));
        traj.disagreement.push_back(sys.scaled_disagreement(pos));
        traj.velocity_norm.push_back(max_agent_norm(vel, sys.agent_count(), sys.dimension()));
        traj.positions.push_back(std::move(pos));
        traj.velocities.push_back(std::move(vel));
    };
    record(0);

    const double h = cfg.dt;
    Vec k1, k2, k3, k4, tmp(state.size());
    for (std::size_t k = 1; k <= steps; ++k) {
        k1 = sys.double_rhs(state, alpha);
        for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + 0.5 * h * k1[i];
        k2 = sys.double_rhs(tmp, alpha);
        for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + 0.5 * h * k2[i];
        k3 = sys.double_rhs(tmp, alpha);
        for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + h * k3[i];
        k4 = sys.double_rhs(tmp, alpha);
        for (std::size_t i = 0; i < state.size(); ++i) {
            state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if (!state_ok(state)) {
            // Weak damping blows up by design; report it instead of failing.
            traj.nonfinite = true;
            break;
        }
        if (k % cfg.record_every == 0 || k == steps) record(k);
    }
    return traj;
}

ClusterReport detect_clusters(const std::vector<Vec>& points, double threshold) {
    if (!(threshold > 0.0)) throw ValidationError("threshold", "must be positive");
    const std::size_t n = points.size();
    ClusterReport report;
    if (n == 0) {
        report.min_inter_distance = std::numeric_limits<double>::infinity();
        return report;
    }
    const std::size_t d = points.front().size();
    for (const Vec& p : points) {
        if (p.size() != d) throw DimensionError("detect_clusters: points have mixed dimensions");
    }

    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (euclidean(points[i], points[j]) < threshold) {
                parent[find(i)] = find(j);
            }
        }
    }

    // Stable ids: clusters numbered by their smallest member.
    std::vector<std::size_t> cluster_of(n, 0);
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            cluster_of[i] = roots.size();
        } else {
            cluster_of[i] = static_cast<std::size_t>(it - roots.begin()) + 1;
        }
    }
    const std::size_t k = roots.size();

    report.assignments = cluster_of;
    report.centers.assign(k, Vec(d, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = cluster_of[i] - 1;
        ++sizes[c];
        for (std::size_t t = 0; t < d; ++t) report.centers[c][t] += points[i][t];
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t t = 0; t < d; ++t) report.centers[c][t] /= static_cast<double>(sizes[c]);
    }

    report.min_inter_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = euclidean(points[i], points[j]);
            if (cluster_of[i] == cluster_of[j]) {
                report.max_intra_distance = std::max(report.max_intra_distance, dist);
            } else {
                report.min_inter_distance = std::min(report.min_inter_distance, dist);
            }
        }
    }
    return report;
}

bool sup_norm_growth(const Trajectory& traj) {
    if (traj.nonfinite) return true;
    const std::size_t m = traj.positions.size();
    if (m < 8) return false;
    double quarter_sup[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t q = std::min<std::size_t>(3, 4 * k / m);
        double sup = linf_norm(traj.positions[k]);
        if (!traj.velocities.empty()) sup = std::max(sup, linf_norm(traj.velocities[k]));
        quarter_sup[q] = std::max(quarter_sup[q], sup);
    }
    return quarter_sup[3] > 1.05 * quarter_sup[2] && quarter_sup[2] > 1.05 * quarter_sup[1];
}

Verdict convergence_verdict(const Trajectory& traj, const MscSystem& sys, const Vec& predicted,
                            double tol) {
    if (predicted.size() != sys.state_size()) {
        throw DimensionError("convergence_verdict: prediction has size " +
                             std::to_string(predicted.size()) + ", expected " +
                             std::to_string(sys.state_size()));
    }
    if (!(tol > 0.0)) throw ValidationError("tol", "must be positive");

    if (traj.nonfinite) return {VerdictKind::Diverged, 0.0};
    const std::size_t m = traj.positions.size();
    if (m == 0) return {VerdictKind::NotConverged, 0.0};

    // Earliest sample from which the run stays inside the tolerance tube.
    std::size_t settle = m;
    for (std::size_t k = m; k-- > 0;) {
        double dev = 0.0;
        for (std::size_t t = 0; t < predicted.size(); ++t) {
            dev = std::max(dev, std::abs(traj.positions[k][t] - predicted[t]));
        }
        if (dev < tol) {
            settle = k;
        } else {
            break;
        }
    }
    if (settle < m) return {VerdictKind::Converged, traj.times[settle]};
    if (sup_norm_growth(traj)) return {VerdictKind::Diverged, 0.0};
    return {VerdictKind::NotConverged, 0.0};
}

}  // namespace msc
