#include "msc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>

#include <json.hpp>

#include "msc/csv_io.hpp"
#include "msc/errors.hpp"
#include "msc/scenario.hpp"
#include "msc/sim.hpp"
#include "msc/svg.hpp"
#include "msc/verify.hpp"

namespace msc {

namespace {

using ordered_json = nlohmann::ordered_json;

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

const char* verdict_name(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::Converged: return "Converged";
        case VerdictKind::NotConverged: return "NotConverged";
        case VerdictKind::Diverged: return "Diverged";
    }
    return "NotConverged";
}

std::vector<ComplexScalar> sorted_eigenvalues(std::vector<ComplexScalar> eigs) {
    std::sort(eigs.begin(), eigs.end(), [](const ComplexScalar& a, const ComplexScalar& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eigs;
}

Vec flatten(const std::vector<Vec>& per_agent) {
    Vec out;
    for (const Vec& v : per_agent) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<Vec> final_agent_states(const Trajectory& traj) {
    std::vector<Vec> points;
    const Vec& last = traj.positions.back();
    for (std::size_t i = 0; i < traj.agent_count; ++i) {
        points.emplace_back(last.begin() + static_cast<std::ptrdiff_t>(i * traj.dimension),
                            last.begin() + static_cast<std::ptrdiff_t>((i + 1) * traj.dimension));
    }
    return points;
}

ordered_json agent_rows(const std::vector<Vec>& rows) {
    ordered_json arr = ordered_json::array();
    for (const Vec& r : rows) arr.push_back(r);
    return arr;
}

struct RunOutcome {
    Trajectory traj;
    Verdict verdict;
    bool prediction_available = false;
    Vec predicted;  // stacked; empty when unavailable
};

// Shared by simulate and sweep: run the configured dynamics and judge it.
RunOutcome execute_run(const Scenario& sc, const MscSystem& sys, const SpectralReport& report,
                       double alpha) {
    RunOutcome out;
    if (sc.dynamics == DynamicsKind::Single) {
        out.traj = integrate_single(sys, sc.positions0, sc.integrator);
        out.predicted = flatten(sys.predicted_limit_single(sc.positions0));
        out.prediction_available = true;
        out.verdict = convergence_verdict(out.traj, sys, out.predicted, sc.tolerances.settle);
        return out;
    }
    out.traj = integrate_double(sys, sc.positions0, sc.velocities0, alpha, sc.integrator);
    if (alpha > report.alpha_critical_exact) {
        out.predicted =
            flatten(sys.predicted_limit_double(sc.positions0, sc.velocities0, alpha, report));
        out.prediction_available = true;
        out.verdict = convergence_verdict(out.traj, sys, out.predicted, sc.tolerances.settle);
    } else {
        out.verdict = sup_norm_growth(out.traj) ? Verdict{VerdictKind::Diverged, 0.0}
                                                : Verdict{VerdictKind::NotConverged, 0.0};
    }
    return out;
}

}  // namespace

int cmd_analyze(const std::string& scenario_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const Scenario sc = load_scenario(scenario_path);
        const MscSystem sys = make_system(sc);
        const SpectralReport report = sys.spectral_report();

        out << "scenario: " << sc.name << "\n";
        out << "agents: " << sys.agent_count() << "\n";
        out << "dimension: " << sys.dimension() << "\n";
        out << "edges: " << sys.graph().edge_count() << "\n";
        out << "dynamics: " << (sc.dynamics == DynamicsKind::Single ? "single" : "double")
            << "\n";
        if (sc.dynamics == DynamicsKind::Double) {
            out << "alpha: " << format_double(sc.alpha) << "\n";
        }
        out << "eigenvalues (re, im):\n";
        for (const ComplexScalar& ev : sorted_eigenvalues(report.eigenvalues)) {
            out << "  " << format_double(ev.real()) << ", " << format_double(ev.imag()) << "\n";
        }
        out << "zero_count: " << report.zero_count << "\n";
        out << "positive_real_count: " << report.positive_real_count << "\n";
        out << "alpha_critical_exact: " << format_double(report.alpha_critical_exact) << "\n";
        out << "alpha_critical_conservative: "
            << format_double(report.alpha_critical_conservative) << "\n";
        if (sc.dynamics == DynamicsKind::Double) {
            out << "damping_sufficient: "
                << (sc.alpha > report.alpha_critical_exact ? "yes" : "no") << "\n";
        }

        // Edge-form cross-check: the two operators must share their nonzero
        // spectrum.
        const double scale = std::max(1.0, sys.theta().frobenius_norm());
        const double zero_tol = 1e-8 * scale;
        std::vector<ComplexScalar> theta_nonzero;
        for (const ComplexScalar& ev : report.eigenvalues) {
            if (std::abs(ev) > zero_tol) theta_nonzero.push_back(ev);
        }
        std::vector<ComplexScalar> edge_nonzero;
        for (const ComplexScalar& ev : eigenvalues(sys.edge_form_matrix()).eigenvalues) {
            if (std::abs(ev) > zero_tol) edge_nonzero.push_back(ev);
        }
        const MatchResult mr =
            match_eigenvalue_multisets(theta_nonzero, edge_nonzero, 1e-7 * scale);
        out << "edge_form_match: " << (mr.matched ? "yes" : "no") << "\n";
        out << "edge_form_max_distance: " << format_double(mr.max_distance) << "\n";
        return mr.matched ? 0 : 4;
    });
}

int cmd_simulate(const std::string& scenario_path, const std::string& output_dir,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const Scenario sc = load_scenario(scenario_path);
        const MscSystem sys = make_system(sc);
        const SpectralReport report = sys.spectral_report();
        const RunOutcome run = execute_run(sc, sys, report, sc.alpha);
        const Trajectory& traj = run.traj;

        const std::vector<Vec> finals = final_agent_states(traj);
        const ClusterReport clusters = detect_clusters(finals, sc.tolerances.cluster);

        std::filesystem::create_directories(output_dir);
        const std::filesystem::path dir(output_dir);
        write_text_file((dir / "trajectory.csv").string(), trajectory_csv(traj));
        write_text_file((dir / "monitors.csv").string(), monitors_csv(traj));
        write_text_file((dir / "states.svg").string(),
                        states_chart_svg(traj, sc.name + ": state components"));
        write_text_file((dir / "paths.svg").string(),
                        paths_chart_svg(traj, clusters, sc.name + ": agent paths"));

        double max_final_deviation = 0.0;
        if (run.prediction_available) {
            const Vec& last = traj.positions.back();
            for (std::size_t t = 0; t < run.predicted.size(); ++t) {
                max_final_deviation =
                    std::max(max_final_deviation, std::abs(last[t] - run.predicted[t]));
            }
        }

        ordered_json summary;
        summary["scenario"] = sc.name;
        summary["dynamics"] = sc.dynamics == DynamicsKind::Single ? "single" : "double";
        summary["agents"] = sys.agent_count();
        summary["dimension"] = sys.dimension();
        if (sc.dynamics == DynamicsKind::Double) {
            summary["alpha"] = sc.alpha;
            summary["alpha_critical_exact"] = report.alpha_critical_exact;
            summary["alpha_critical_conservative"] = report.alpha_critical_conservative;
        }
        summary["verdict"] = verdict_name(run.verdict.kind);
        if (run.verdict.kind == VerdictKind::Converged) {
            summary["t_settle"] = run.verdict.t_settle;
        } else {
            summary["t_settle"] = nullptr;
        }
        summary["nonfinite"] = traj.nonfinite;
        if (run.prediction_available) {
            std::vector<Vec> predicted_rows;
            const std::size_t d = sys.dimension();
            for (std::size_t i = 0; i < sys.agent_count(); ++i) {
                predicted_rows.emplace_back(
                    run.predicted.begin() + static_cast<std::ptrdiff_t>(i * d),
                    run.predicted.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
            }
            summary["predicted_limits"] = agent_rows(predicted_rows);
            summary["max_final_deviation"] = max_final_deviation;
        } else {
            summary["predicted_limits"] = nullptr;
            summary["max_final_deviation"] = nullptr;
        }
        summary["final_positions"] = agent_rows(finals);
        {
            ordered_json monitors;
            monitors["lyapunov"] = traj.lyapunov.back();
            monitors["xa_drift"] = traj.xa_drift.back();
            monitors["disagreement"] = traj.disagreement.back();
            if (!traj.velocity_norm.empty()) {
                monitors["velocity_norm"] = traj.velocity_norm.back();
            } else {
                monitors["velocity_norm"] = nullptr;
            }
            summary["final_monitors"] = monitors;
        }
        {
            ordered_json cj;
            cj["count"] = clusters.centers.size();
            cj["threshold"] = sc.tolerances.cluster;
            cj["assignments"] = clusters.assignments;
            cj["centers"] = agent_rows(clusters.centers);
            cj["max_intra_distance"] = clusters.max_intra_distance;
            if (std::isfinite(clusters.min_inter_distance)) {
                cj["min_inter_distance"] = clusters.min_inter_distance;
            } else {
                cj["min_inter_distance"] = nullptr;
            }
            summary["clusters"] = cj;
        }
        write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");

        out << "verdict: " << verdict_name(run.verdict.kind);
        if (run.verdict.kind == VerdictKind::Converged) {
            out << " (t_settle " << format_double(run.verdict.t_settle) << ")";
        }
        out << "\nclusters: " << clusters.centers.size() << "\n";
        out << "outputs: " << (dir / "trajectory.csv").string() << ", "
            << (dir / "monitors.csv").string() << ", " << (dir / "summary.json").string() << ", "
            << (dir / "states.svg").string() << ", " << (dir / "paths.svg").string() << "\n";
        return run.verdict.kind == VerdictKind::Diverged ? 3 : 0;
    });
}

int cmd_sweep_alpha(const std::string& scenario_path, const std::vector<double>& alphas,
                    std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const Scenario sc = load_scenario(scenario_path);
        if (sc.dynamics != DynamicsKind::Double) {
            throw ValidationError("dynamics", "sweep requires a double-integrator scenario");
        }
        if (alphas.empty()) throw ValidationError("alphas", "at least one value required");
        for (double a : alphas) {
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw ValidationError("alphas", "every value must be a positive finite number");
            }
        }
        const MscSystem sys = make_system(sc);
        const SpectralReport report = sys.spectral_report();
        const double alpha_star = report.alpha_critical_exact;

        std::vector<double> sorted_alphas = alphas;
        std::sort(sorted_alphas.begin(), sorted_alphas.end());

        out << "scenario: " << sc.name << "\n";
        out << "alpha_critical_exact: " << format_double(alpha_star) << "\n";
        out << "alpha_critical_conservative: "
            << format_double(report.alpha_critical_conservative) << "\n";
        out << "note: the damping threshold is computed for this scenario's own topology and "
               "scalings; thresholds quoted for other networks do not transfer.\n";
        out << "alpha,verdict,t_settle,final_disagreement\n";

        // Near the threshold the finite horizon cannot separate the regimes;
        // one step's worth of gain is excused from the consistency check.
        const double band = sc.integrator.dt * std::max(1.0, alpha_star);
        bool consistent = true;
        std::string violation;
        for (double alpha : sorted_alphas) {
            const RunOutcome run = execute_run(sc, sys, report, alpha);
            out << format_double(alpha) << "," << verdict_name(run.verdict.kind) << ",";
            if (run.verdict.kind == VerdictKind::Converged) {
                out << format_double(run.verdict.t_settle);
            }
            out << "," << format_double(run.traj.disagreement.back()) << "\n";

            if (alpha < alpha_star - band && run.verdict.kind == VerdictKind::Converged) {
                consistent = false;
                violation = "alpha " + format_double(alpha) +
                            " converged below the critical gain";
            }
            if (alpha > alpha_star + band && run.verdict.kind == VerdictKind::Diverged) {
                consistent = false;
                violation =
                    "alpha " + format_double(alpha) + " diverged above the critical gain";
            }
        }
        if (!consistent) {
            err << "sweep inconsistency: " << violation << "\n";
            return 4;
        }
        return 0;
    });
}

int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const VerifyReport report = run_verification(seed);
        out << format_report(report);
        return report.passed() ? 0 : 4;
    });
}

}  // namespace msc
