#include "msc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "msc/csv_io.hpp"
#include "msc/eigen.hpp"
#include "msc/errors.hpp"
#include "msc/graph.hpp"
#include "msc/scaling.hpp"
#include "msc/sim.hpp"

namespace msc {

bool VerifyReport::passed() const {
    for (const SuiteResult& s : suites) {
        if (s.failures != 0) return false;
    }
    return true;
}

namespace {

Vec random_unit_axis(SplitMix64& rng) {
    while (true) {
        Vec a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double len = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        if (len < 0.1) continue;
        for (double& v : a) v /= len;
        return a;
    }
}

double random_definite_angle(SplitMix64& rng, std::size_t d) {
    // cos(theta) clear of the rejection band so classification stays stable.
    // Planar rotations have symmetric part cos(theta)*I, definite for either
    // sign; a 3D rotation keeps a +1 eigenvalue along the axis, so only
    // cos(theta) > 0 is definite there.
    while (true) {
        const double theta = rng.uniform(-3.141592653589793, 3.141592653589793);
        const double c = std::cos(theta);
        if (d == 3 ? c > 0.05 : std::abs(c) > 0.05) return theta;
    }
}

// Decay margin of the damped second-order loop: the slowest mode among the
// roots of s^2 + alpha s + mu over the nonzero coupling eigenvalues, and
// the velocity mode at -alpha from the zero eigenvalues.
double double_loop_decay(const SpectralReport& report, double alpha, double zero_tol) {
    double margin = alpha;
    for (const ComplexScalar& mu : report.eigenvalues) {
        if (std::abs(mu) <= zero_tol) continue;
        const ComplexScalar disc = std::sqrt(ComplexScalar(alpha * alpha, 0.0) - 4.0 * mu);
        const double re1 = (0.5 * (-alpha + disc)).real();
        const double re2 = (0.5 * (-alpha - disc)).real();
        margin = std::min(margin, -std::max(re1, re2));
    }
    return margin;
}

double companion_radius(const SpectralReport& report, double alpha) {
    double rho = 0.0;
    for (const ComplexScalar& mu : report.eigenvalues) {
        const ComplexScalar disc = std::sqrt(ComplexScalar(alpha * alpha, 0.0) - 4.0 * mu);
        rho = std::max({rho, std::abs(0.5 * (-alpha + disc)), std::abs(0.5 * (-alpha - disc))});
    }
    return rho;
}

double spectral_radius(const SpectralReport& report) {
    double rho = 0.0;
    for (const ComplexScalar& mu : report.eigenvalues) rho = std::max(rho, std::abs(mu));
    return rho;
}

double min_nonzero_real(const SpectralReport& report, double zero_tol) {
    double lo = 0.0;
    bool first = true;
    for (const ComplexScalar& mu : report.eigenvalues) {
        if (std::abs(mu) <= zero_tol) continue;
        if (first || mu.real() < lo) lo = mu.real();
        first = false;
    }
    return first ? 0.0 : lo;
}

Vec flatten(const std::vector<Vec>& per_agent) {
    Vec out;
    for (const Vec& v : per_agent) out.insert(out.end(), v.begin(), v.end());
    return out;
}

void note_failure(SuiteResult& suite, const std::string& message) {
    ++suite.failures;
    if (suite.note.empty()) suite.note = message;
}

// ---- spectral structure + edge-form matching over one shared corpus ----

void run_spectral_suites(std::uint64_t corpus_seed, SuiteResult& counts, SuiteResult& match) {
    counts.name = "spectral_counts";
    match.name = "edge_form_match";
    SplitMix64 rng(corpus_seed);
    for (int c = 0; c < 200; ++c) {
        const MscSystem sys = random_system(rng);
        ++counts.cases;
        ++match.cases;
        const std::string label = "case " + std::to_string(c);
        const double scale = std::max(1.0, sys.theta().frobenius_norm());
        const double zero_tol = 1e-8 * scale;
        try {
            const SpectralReport report = sys.spectral_report();
            const std::size_t d = sys.dimension();
            const std::size_t nd = sys.state_size();
            if (report.zero_count != d || report.positive_real_count != nd - d) {
                note_failure(counts, label + ": counts " + std::to_string(report.zero_count) +
                                          "/" + std::to_string(report.positive_real_count));
            } else {
                for (const ComplexScalar& mu : report.eigenvalues) {
                    const double mag = std::abs(mu);
                    if (mag <= zero_tol) {
                        counts.worst = std::max(counts.worst, mag / zero_tol);
                    } else if (mu.real() <= zero_tol) {
                        note_failure(counts,
                                     label + ": nonzero eigenvalue with small real part");
                        break;
                    }
                }
            }

            std::vector<ComplexScalar> theta_nonzero;
            for (const ComplexScalar& mu : report.eigenvalues) {
                if (std::abs(mu) > zero_tol) theta_nonzero.push_back(mu);
            }
            std::vector<ComplexScalar> edge_nonzero;
            for (const ComplexScalar& mu : eigenvalues(sys.edge_form_matrix()).eigenvalues) {
                if (std::abs(mu) > zero_tol) edge_nonzero.push_back(mu);
            }
            if (edge_nonzero.size() != theta_nonzero.size()) {
                note_failure(match, label + ": nonzero spectrum sizes " +
                                        std::to_string(theta_nonzero.size()) + " vs " +
                                        std::to_string(edge_nonzero.size()));
            } else {
                const MatchResult mr =
                    match_eigenvalue_multisets(theta_nonzero, edge_nonzero, 1e-7 * scale);
                match.worst = std::max(match.worst, mr.max_distance / scale);
                if (!mr.matched) {
                    note_failure(match, label + ": multiset mismatch, max distance " +
                                            format_double(mr.max_distance));
                }
            }
        } catch (const Error& e) {
            note_failure(counts, label + ": " + e.what());
            note_failure(match, label + ": " + e.what());
        }
    }
}

// ---- conservation + Lyapunov monotonicity over single-integrator runs ----

void run_conservation_suites(std::uint64_t seed, SuiteResult& drift, SuiteResult& lyap) {
    drift.name = "conservation";
    lyap.name = "lyapunov_monotone";
    SplitMix64 rng(seed);
    for (int c = 0; c < 25; ++c) {
        const MscSystem sys = random_system(rng);
        const Vec x0 = random_state(sys.state_size(), 1.0, rng);
        ++drift.cases;
        ++lyap.cases;
        const std::string label = "case " + std::to_string(c);
        try {
            const SpectralReport report = sys.spectral_report();
            const double zero_tol = 1e-8 * std::max(1.0, sys.theta().frobenius_norm());
            const double min_re = min_nonzero_real(report, zero_tol);
            IntegratorConfig cfg;
            cfg.dt = std::min(0.01, 1.0 / std::max(1.0, spectral_radius(report)));
            cfg.t_end = std::clamp(min_re > 0.0 ? 17.0 / min_re : 400.0, 20.0, 400.0);
            const double steps = cfg.t_end / cfg.dt;
            cfg.record_every = std::max<std::size_t>(1, static_cast<std::size_t>(steps / 64.0));

            const Trajectory traj = integrate_single(sys, x0, cfg);
            double max_drift = 0.0;
            for (double v : traj.xa_drift) max_drift = std::max(max_drift, v);
            drift.worst = std::max(drift.worst, max_drift);
            if (max_drift >= 1e-7) {
                note_failure(drift, label + ": drift " + format_double(max_drift));
            }

            const double slack = 1e-9 * std::max(1.0, traj.lyapunov.front());
            double worst_rise = 0.0;
            for (std::size_t k = 1; k < traj.lyapunov.size(); ++k) {
                worst_rise = std::max(worst_rise, traj.lyapunov[k] - traj.lyapunov[k - 1]);
            }
            lyap.worst = std::max(lyap.worst, worst_rise);
            if (worst_rise > slack) {
                note_failure(lyap, label + ": rise " + format_double(worst_rise));
            }
        } catch (const Error& e) {
            note_failure(drift, label + ": " + e.what());
            note_failure(lyap, label + ": " + e.what());
        }
    }
}

// ---- limit agreement, first-order law ----

void run_limit_single(std::uint64_t seed, SuiteResult& suite) {
    suite.name = "limit_single";
    SplitMix64 rng(seed);
    for (int c = 0; c < 15; ++c) {
        const MscSystem sys = random_system(rng);
        const Vec x0 = random_state(sys.state_size(), 1.0, rng);
        ++suite.cases;
        const std::string label = "case " + std::to_string(c);
        try {
            const SpectralReport report = sys.spectral_report();
            const double zero_tol = 1e-8 * std::max(1.0, sys.theta().frobenius_norm());
            const double min_re = min_nonzero_real(report, zero_tol);
            IntegratorConfig cfg;
            cfg.dt = std::min(0.01, 1.0 / std::max(1.0, spectral_radius(report)));
            cfg.t_end = std::clamp(min_re > 0.0 ? 17.0 / min_re : 400.0, 20.0, 400.0);
            const double steps = cfg.t_end / cfg.dt;
            cfg.record_every = std::max<std::size_t>(1, static_cast<std::size_t>(steps / 64.0));

            const Trajectory traj = integrate_single(sys, x0, cfg);
            const Vec predicted = flatten(sys.predicted_limit_single(x0));
            const Verdict v = convergence_verdict(traj, sys, predicted, 1e-5);
            double final_dev = 0.0;
            for (std::size_t t = 0; t < predicted.size(); ++t) {
                final_dev =
                    std::max(final_dev, std::abs(traj.positions.back()[t] - predicted[t]));
            }
            suite.worst = std::max(suite.worst, final_dev);
            if (v.kind != VerdictKind::Converged) {
                note_failure(suite, label + ": verdict not Converged, final deviation " +
                                        format_double(final_dev));
            }
        } catch (const Error& e) {
            note_failure(suite, label + ": " + e.what());
        }
    }
}

// ---- limit agreement, damped second-order law ----

void run_limit_double(std::uint64_t seed, SuiteResult& suite) {
    suite.name = "limit_double";
    SplitMix64 rng(seed);
    for (int c = 0; c < 10; ++c) {
        const MscSystem sys = random_system(rng);
        const Vec x0 = random_state(sys.state_size(), 1.0, rng);
        const Vec v0 = random_state(sys.state_size(), 1.0, rng);
        ++suite.cases;
        const std::string label = "case " + std::to_string(c);
        try {
            const SpectralReport report = sys.spectral_report();
            const double zero_tol = 1e-8 * std::max(1.0, sys.theta().frobenius_norm());
            const double alpha = 1.5 * std::max(report.alpha_critical_exact, 0.5);
            const double decay = double_loop_decay(report, alpha, zero_tol);
            IntegratorConfig cfg;
            cfg.dt = std::min(0.01, 1.0 / std::max(1.0, companion_radius(report, alpha)));
            cfg.t_end = std::clamp(decay > 0.0 ? 17.0 / decay : 600.0, 20.0, 600.0);
            const double steps = cfg.t_end / cfg.dt;
            cfg.record_every = std::max<std::size_t>(1, static_cast<std::size_t>(steps / 64.0));

            const Trajectory traj = integrate_double(sys, x0, v0, alpha, cfg);
            const Vec predicted = flatten(sys.predicted_limit_double(x0, v0, alpha, report));
            const Verdict v = convergence_verdict(traj, sys, predicted, 1e-5);
            double final_dev = 0.0;
            for (std::size_t t = 0; t < predicted.size(); ++t) {
                final_dev =
                    std::max(final_dev, std::abs(traj.positions.back()[t] - predicted[t]));
            }
            suite.worst = std::max(suite.worst, final_dev);
            if (v.kind != VerdictKind::Converged) {
                note_failure(suite, label + ": verdict not Converged, final deviation " +
                                        format_double(final_dev));
            } else if (traj.velocity_norm.back() >= 1e-6) {
                note_failure(suite, label + ": residual velocity " +
                                        format_double(traj.velocity_norm.back()));
            }
        } catch (const Error& e) {
            note_failure(suite, label + ": " + e.what());
        }
    }
}

// ---- reduction to scalar consensus, against an independent integrator ----

// Plain-loop RK4 for the scalar law du_i = sgn_i * sum_j (s_j y_j - s_i y_i),
// deliberately sharing no code with the library integrator.
std::vector<std::vector<double>> scalar_oracle(const std::vector<double>& s,
                                               const std::vector<int>& sgn,
                                               const std::vector<std::vector<std::size_t>>& nbrs,
                                               std::vector<double> y, double dt,
                                               std::size_t steps, std::size_t record_every) {
    const std::size_t n = y.size();
    auto rhs = [&](const std::vector<double>& state) {
        std::vector<double> u(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j : nbrs[i]) {
                acc += s[j - 1] * state[j - 1] - s[i] * state[i];
            }
            u[i] = static_cast<double>(sgn[i]) * acc;
        }
        return u;
    };
    std::vector<std::vector<double>> samples;
    samples.push_back(y);
    std::vector<double> k1, k2, k3, k4, tmp(n);
    for (std::size_t k = 1; k <= steps; ++k) {
        k1 = rhs(y);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        k2 = rhs(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        k3 = rhs(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
        k4 = rhs(tmp);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if (k % record_every == 0 || k == steps) samples.push_back(y);
    }
    return samples;
}

void run_scalar_reduction(std::uint64_t seed, SuiteResult& suite) {
    suite.name = "scalar_reduction";
    SplitMix64 rng(seed);
    for (int c = 0; c < 15; ++c) {
        const std::size_t n = 2 + rng.below(5);
        const std::size_t d = 2 + rng.below(2);
        ++suite.cases;
        const std::string label = "case " + std::to_string(c);
        try {
            NetworkGraph graph = random_connected_graph(n, 0.5, rng);
            std::vector<double> s(n);
            std::vector<int> sgn(n);
            std::vector<Matrix> raw;
            for (std::size_t i = 0; i < n; ++i) {
                double v = rng.uniform(0.5, 2.0);
                if (rng.below(2) == 1) v = -v;
                s[i] = v;
                sgn[i] = v > 0.0 ? 1 : -1;
                raw.push_back(v * Matrix::identity(d));
            }
            const MscSystem sys =
                MscSystem::assemble(graph, ScalingSet::classify(raw));
            const Vec x0 = random_state(n * d, 1.0, rng);

            // Horizon long enough for the slowest mode to decay below the
            // final-agreement tolerance; unlucky sparse draws can have a
            // small algebraic connectivity.
            const SpectralReport report = sys.spectral_report();
            double min_re = std::numeric_limits<double>::infinity();
            const double zero_tol =
                1e-8 * std::max(1.0, sys.theta().frobenius_norm());
            for (const ComplexScalar& mu : report.eigenvalues) {
                if (std::abs(mu) > zero_tol) min_re = std::min(min_re, mu.real());
            }
            IntegratorConfig cfg;
            cfg.dt = 0.01;
            cfg.t_end = std::clamp(16.0 / min_re, 20.0, 300.0);
            cfg.record_every = 10;
            const Trajectory traj = integrate_single(sys, x0, cfg);
            const std::size_t steps =
                static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));

            double max_dev = 0.0;
            for (std::size_t comp = 0; comp < d; ++comp) {
                std::vector<double> y(n);
                for (std::size_t i = 0; i < n; ++i) y[i] = x0[i * d + comp];
                const auto oracle =
                    scalar_oracle(s, sgn, graph.neighbors(), y, cfg.dt, steps, cfg.record_every);
                if (oracle.size() != traj.positions.size()) {
                    note_failure(suite, label + ": sample counts differ");
                    break;
                }
                for (std::size_t k = 0; k < oracle.size(); ++k) {
                    for (std::size_t i = 0; i < n; ++i) {
                        max_dev = std::max(
                            max_dev, std::abs(oracle[k][i] - traj.positions[k][i * d + comp]));
                    }
                }
            }
            suite.worst = std::max(suite.worst, max_dev);
            if (max_dev > 1e-9) {
                note_failure(suite, label + ": oracle deviation " + format_double(max_dev));
            }

            double agree = 0.0;
            const Vec& last = traj.positions.back();
            for (std::size_t comp = 0; comp < d; ++comp) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = i + 1; j < n; ++j) {
                        agree = std::max(agree, std::abs(s[i] * last[i * d + comp] -
                                                         s[j] * last[j * d + comp]));
                    }
                }
            }
            if (agree >= 1e-6) {
                note_failure(suite, label + ": scaled final states differ by " +
                                        format_double(agree));
            }
        } catch (const Error& e) {
            note_failure(suite, label + ": " + e.what());
        }
    }
}

// ---- closed-form Hurwitz test against quadratic-formula roots ----

void run_hurwitz_oracle(std::uint64_t seed, SuiteResult& suite) {
    suite.name = "hurwitz_oracle";
    SplitMix64 rng(seed);
    std::size_t accepted = 0;
    while (accepted < 10000) {
        const double a = rng.uniform(-3.0, 3.0);
        const double b = rng.uniform(-3.0, 3.0);
        const double c = rng.uniform(-3.0, 3.0);
        const double d = rng.uniform(-3.0, 3.0);
        const double criterion = a * b * d + a * a * c - d * d;
        if (std::abs(criterion) <= 1e-6) continue;
        ++accepted;
        ++suite.cases;

        const ComplexScalar lin(a, b);
        const ComplexScalar con(c, d);
        const ComplexScalar disc = std::sqrt(lin * lin - 4.0 * con);
        const double re1 = (0.5 * (-lin + disc)).real();
        const double re2 = (0.5 * (-lin - disc)).real();
        const bool roots_stable = std::max(re1, re2) < 0.0;
        if (roots_stable != hurwitz_complex_quadratic(a, b, c, d)) {
            note_failure(suite, "tuple (" + format_double(a) + ", " + format_double(b) + ", " +
                                    format_double(c) + ", " + format_double(d) + ")");
        }
    }
}

}  // namespace

Matrix random_definite_matrix(std::size_t d, SplitMix64& rng) {
    std::uint64_t style = rng.below(3);
    if (style == 1 && d != 2 && d != 3) style = 2;
    Matrix m;
    if (style == 0) {
        m = rng.uniform(0.5, 2.0) * Matrix::identity(d);
    } else if (style == 1) {
        const double theta = random_definite_angle(rng, d);
        m = (d == 2) ? rotation2(theta) : rotation3(random_unit_axis(rng), theta);
    } else {
        m = rng.uniform(1.0, 2.0) * Matrix::identity(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) m(r, c) += rng.uniform(-0.3, 0.3);
    }
    if (rng.below(2) == 1) m = -1.0 * m;
    return m;
}

MscSystem random_system(SplitMix64& rng) {
    const std::size_t n = 2 + rng.below(5);
    const std::size_t d = 2 + rng.below(2);
    NetworkGraph graph = random_connected_graph(n, 0.5, rng);
    std::vector<Matrix> raw;
    raw.reserve(n);
    for (std::size_t i = 0; i < n; ++i) raw.push_back(random_definite_matrix(d, rng));
    return MscSystem::assemble(std::move(graph), ScalingSet::classify(raw));
}

Vec random_state(std::size_t size, double range, SplitMix64& rng) {
    Vec out(size);
    for (double& v : out) v = rng.uniform(-range, range);
    return out;
}

VerifyReport run_verification(std::uint64_t seed) {
    VerifyReport report;
    report.seed = seed;
    report.suites.resize(8);

    SplitMix64 master(seed);
    const std::uint64_t corpus_seed = master.next();
    const std::uint64_t conservation_seed = master.next();
    const std::uint64_t limit_single_seed = master.next();
    const std::uint64_t limit_double_seed = master.next();
    const std::uint64_t scalar_seed = master.next();
    const std::uint64_t hurwitz_seed = master.next();

    run_spectral_suites(corpus_seed, report.suites[0], report.suites[1]);
    run_conservation_suites(conservation_seed, report.suites[2], report.suites[3]);
    run_limit_single(limit_single_seed, report.suites[4]);
    run_limit_double(limit_double_seed, report.suites[5]);
    run_scalar_reduction(scalar_seed, report.suites[6]);
    run_hurwitz_oracle(hurwitz_seed, report.suites[7]);
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::string out = "verification seed: " + std::to_string(report.seed) + "\n";
    for (const SuiteResult& s : report.suites) {
        char line[256];
        std::snprintf(line, sizeof(line), "suite %-18s cases %-6zu failures %-4zu worst %s\n",
                      s.name.c_str(), s.cases, s.failures, format_double(s.worst).c_str());
        out += line;
        if (!s.note.empty()) out += "  first failure: " + s.note + "\n";
    }
    out += std::string("overall: ") + (report.passed() ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace msc
