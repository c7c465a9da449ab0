#pragma once

#include <cstdint>
#include <vector>

#include "msc/matrix.hpp"
#include "msc/protocol.hpp"

namespace msc {

// Fixed-step integration settings. The horizon is rounded to the nearest
// whole number of steps, so sample times are exactly k * dt.
struct IntegratorConfig {
    double dt = 0.005;
    double t_end = 40.0;
    std::size_t record_every = 1;
};

enum class TrajectoryKind { SingleIntegrator, DoubleIntegrator };

// Recorded samples of one run. positions[k] is the stacked nd-vector at
// times[k]; velocities mirrors it for double-integrator runs and is empty
// otherwise, as is velocity_norm. nonfinite marks a run that blew past the
// overflow guard; samples stop at the last finite state.
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::SingleIntegrator;
    std::size_t agent_count = 0;
    std::size_t dimension = 0;
    std::vector<double> times;
    std::vector<Vec> positions;
    std::vector<Vec> velocities;
    std::vector<double> lyapunov;
    std::vector<double> xa_drift;
    std::vector<double> disagreement;
    std::vector<double> velocity_norm;
    bool nonfinite = false;
};

// Classical RK4 on the single-integrator law. Setup rejects steps with
// dt * rho(Theta) >= 2.5 (StepTooLargeError). Crossing the 1e12 overflow
// guard here is always a defect, so it throws NonFiniteError.
Trajectory integrate_single(const MscSystem& sys, const Vec& x0, const IntegratorConfig& cfg);

// Classical RK4 on the damped double-integrator law. The step guard uses
// the companion-matrix spectral radius (per-mode quadratic roots). Crossing
// the overflow guard is a legitimate outcome for weak damping: the run is
// truncated and flagged nonfinite rather than thrown.
Trajectory integrate_double(const MscSystem& sys, const Vec& positions0, const Vec& velocities0,
                            double alpha, const IntegratorConfig& cfg);

// Single-linkage grouping: two points share a cluster iff they are joined
// by a chain of pairwise distances strictly below threshold. Cluster ids
// are 1-based in order of each cluster's smallest member index.
struct ClusterReport {
    std::vector<std::size_t> assignments;
    std::vector<Vec> centers;
    double max_intra_distance = 0.0;
    // +infinity when there are fewer than two clusters.
    double min_inter_distance = 0.0;
};

ClusterReport detect_clusters(const std::vector<Vec>& points, double threshold);

enum class VerdictKind { Converged, NotConverged, Diverged };

struct Verdict {
    VerdictKind kind = VerdictKind::NotConverged;
    // First sample time after which the run stays within tolerance of the
    // prediction; meaningful only when kind == Converged.
    double t_settle = 0.0;
};

// True when the recorded per-quarter sup-norms grow monotonically (5%
// factor) across the last three quarters, or the run went nonfinite: the
// divergence test usable without a limit prediction.
bool sup_norm_growth(const Trajectory& traj);

// Converged: some sample onward, ||positions - predicted||_inf < tol holds
// through the end. Diverged: sup_norm_growth. NotConverged otherwise.
Verdict convergence_verdict(const Trajectory& traj, const MscSystem& sys, const Vec& predicted,
                            double tol);

}  // namespace msc
