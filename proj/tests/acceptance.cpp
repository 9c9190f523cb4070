// Acceptance gate: verifies the headline guarantees end to end and prints
// one line per criterion. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "formtrack/control.hpp"
#include "formtrack/engine.hpp"
#include "formtrack/potentials.hpp"
#include "formtrack/report.hpp"
#include "formtrack/scenario_io.hpp"
#include "formtrack/trace_io.hpp"

using namespace formtrack;

namespace {

constexpr int kPanelSeeds = 10;

struct PresetRuns {
    std::string name;
    Scenario blf_free;  // noise-free variant of the preset
    MetricsReport blf_free_metrics;
    double blf_free_seconds = 0.0;
    Trace blf_free_trace;
    std::vector<SeedOutcome> blf_panel;
    MetricsReport qlf_free_metrics;
    std::vector<SeedOutcome> qlf_panel;
};

Scenario noise_free(Scenario sc) {
    sc.noise.sd_velocity = 0.0;
    sc.noise.sd_distance = 0.0;
    return sc;
}

Scenario with_law(Scenario sc, ControlLaw law) {
    sc.law = law;
    return sc;
}

PresetRuns run_preset_matrix(const std::string& name) {
    PresetRuns out;
    out.name = name;
    const Scenario preset = load_preset(name);

    out.blf_free = noise_free(preset);
    const auto start = std::chrono::steady_clock::now();
    out.blf_free_trace = run(out.blf_free);
    out.blf_free_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.blf_free_metrics = summarize(out.blf_free_trace, out.blf_free);

    out.blf_panel = run_seed_panel(preset, kPanelSeeds);

    const Scenario qlf = with_law(preset, ControlLaw::QLF);
    const Scenario qlf_free = noise_free(qlf);
    out.qlf_free_metrics = summarize(run(qlf_free), qlf_free);
    out.qlf_panel = run_seed_panel(qlf, kPanelSeeds);
    return out;
}

bool report(int index, bool pass, const std::string& text) {
    std::printf("criterion %2d [%s] %s\n", index, pass ? "PASS" : "FAIL", text.c_str());
    return pass;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- criterion helpers ----------------------------------------------------

bool clean(const MetricsReport& m) {
    return m.bound_violation_samples == 0 && m.breach_events == 0;
}

// Equilibrium-anchored unsaturated variant: start from where the converged
// noise-free run ended (re-anchored to the target's start pose), nudge each
// agent, and raise the saturation limit out of reach.
Scenario unsaturated_variant(const PresetRuns& runs) {
    Scenario sc = runs.blf_free;
    const TraceSample& last = runs.blf_free_trace.samples.back();
    auto target = make_target(sc.target);
    const Vec2 anchor = target->sample(0.0).position;
    const std::vector<Vec2> nudges = {{0.05, 0.02}, {-0.04, 0.03}, {0.01, -0.05}};
    for (std::size_t k = 0; k < last.positions.size(); ++k) {
        sc.initial_positions[k] =
            last.positions[k] - last.target_position + anchor + nudges[k % nudges.size()];
    }
    sc.saturation.u_max = 100.0;
    return sc;
}

}  // namespace

int main() {
    int failures = 0;
    const auto tally = [&](bool pass) { failures += pass ? 0 : 1; };

    const PresetRuns linear = run_preset_matrix("paper_linear");
    const PresetRuns circular = run_preset_matrix("paper_circular");
    const std::vector<const PresetRuns*> presets = {&linear, &circular};

    // 1: the barrier law never lets an edge leave its interval, noise-free
    //    and across a 10-seed noisy panel, fast enough to be routine.
    {
        std::size_t violations = 0, breaches = 0;
        double slowest = 0.0;
        int runs = 0;
        for (const PresetRuns* p : presets) {
            violations += p->blf_free_metrics.bound_violation_samples;
            breaches += p->blf_free_metrics.breach_events;
            slowest = std::max(slowest, p->blf_free_seconds);
            ++runs;
            for (const SeedOutcome& s : p->blf_panel) {
                violations += s.metrics.bound_violation_samples;
                breaches += s.metrics.breach_events;
                ++runs;
            }
        }
        const bool pass = violations == 0 && breaches == 0 && slowest < 10.0;
        tally(report(1, pass,
                     "barrier-law bound invariance: " + std::to_string(violations) +
                         " violation samples, " + std::to_string(breaches) + " breaches over " +
                         std::to_string(runs) + " runs (slowest " + fmt(slowest) + " s)"));
    }

    // 2: the quadratic baseline does cross the bounds and scrambles the
    //    agent ordering; the barrier law does neither.
    {
        bool pass = true;
        std::string detail;
        for (const PresetRuns* p : presets) {
            std::size_t qlf_violations = p->qlf_free_metrics.bound_violation_samples;
            bool qlf_reorder = p->qlf_free_metrics.reorder_time.has_value();
            for (const SeedOutcome& s : p->qlf_panel) {
                qlf_violations += s.metrics.bound_violation_samples;
                qlf_reorder = qlf_reorder || s.metrics.reorder_time.has_value();
            }
            bool blf_clean = clean(p->blf_free_metrics) &&
                             !p->blf_free_metrics.reorder_time.has_value();
            for (const SeedOutcome& s : p->blf_panel)
                blf_clean = blf_clean && clean(s.metrics) && !s.metrics.reorder_time.has_value();
            pass = pass && qlf_violations > 0 && qlf_reorder && blf_clean;
            detail += p->name + ": " + std::to_string(qlf_violations) + " qlf violations, reorder " +
                      (qlf_reorder ? "yes" : "no") + "; ";
        }
        tally(report(2, pass, "quadratic-law contrast: " + detail));
    }

    // 3: the robustness margin of the reference bounds against 0.02 range
    //    noise is exactly seven.
    {
        NoiseSpec noise;
        noise.sd_distance = 0.02;
        const double gamma = gamma_metric(load_preset("paper_linear").graph, noise);
        const bool pass = std::abs(gamma - 7.0) <= 1e-12;
        tally(report(3, pass, "margin-to-noise ratio: gamma = " + fmt(gamma)));
    }

    // 4: recorded commands respect the saturation limit everywhere.
    {
        double worst = 0.0;
        for (const PresetRuns* p : presets) {
            worst = std::max(worst, p->blf_free_metrics.max_control_magnitude);
            worst = std::max(worst, p->qlf_free_metrics.max_control_magnitude);
            for (const SeedOutcome& s : p->blf_panel)
                worst = std::max(worst, s.metrics.max_control_magnitude);
            for (const SeedOutcome& s : p->qlf_panel)
                worst = std::max(worst, s.metrics.max_control_magnitude);
        }
        const bool pass = worst <= 3.0 + 1e-12;
        tally(report(4, pass, "saturation compliance: max command " + fmt(worst) + " m/s"));
    }

    // 5: commands converge to the target velocity on the linear course.
    {
        const double err = linear.blf_free_metrics.final_velocity_error;
        const bool pass = err < 1e-2;
        tally(report(5, pass,
                     "velocity consensus at t = 100 s: max error " + fmt(err) + " m/s"));
    }

    // 6: with saturation out of reach and no noise, the recorded potential
    //    never rises beyond the discretization tolerance.
    {
        bool pass = true;
        std::string detail;
        for (const PresetRuns* p : presets) {
            const Scenario sc = unsaturated_variant(*p);
            const Trace trace = run(sc);
            const MetricsReport m = summarize(trace, sc);
            const auto increases = lyapunov_monitor(trace, sc);
            const bool unsaturated = m.saturated_samples == 0 && m.clamp_events == 0;
            pass = pass && increases.empty() && unsaturated && clean(m);
            detail += p->name + ": " + std::to_string(increases.size()) + " increases, max |u| " +
                      fmt(m.max_control_magnitude) + "; ";
        }
        tally(report(6, pass, "monotone potential when unsaturated: " + detail));
    }

    // 7: analytic gradients agree with central finite differences.
    {
        std::mt19937_64 rng(20240817);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const auto angle = [&] { return 6.283185307179586 * unit(rng); };
        std::size_t checked = 0, failed = 0;

        const auto check_pair = [&](const Vec2& fd, const Vec2& an) {
            ++checked;
            if (!((fd - an).norm() <= 1e-6 * std::max(1.0, an.norm()))) ++failed;
        };

        for (int trial = 0; trial < 4000; ++trial) {
            const double r = 1.0 + 4.0 * unit(rng);
            const EdgeBounds bounds{r, r * (1.0 - 0.05 - 0.25 * unit(rng)),
                                    r * (1.0 + 0.05 + 0.25 * unit(rng))};
            const double width = bounds.r_hi - bounds.r_lo;
            const double d = bounds.r_lo + width * (0.015 + 0.97 * unit(rng));
            const double a = angle();
            const Vec2 rel{d * std::cos(a), d * std::sin(a)};
            const double h = 1e-6 * std::max(1.0, d);
            const Vec2 fd{(barrier_potential({rel.x + h, rel.y}, bounds) -
                           barrier_potential({rel.x - h, rel.y}, bounds)) /
                              (2.0 * h),
                          (barrier_potential({rel.x, rel.y + h}, bounds) -
                           barrier_potential({rel.x, rel.y - h}, bounds)) /
                              (2.0 * h)};
            check_pair(fd, barrier_gradient(rel, bounds));
        }
        for (int trial = 0; trial < 3000; ++trial) {
            const double R = 0.5 + 4.0 * unit(rng);
            const double d = 0.05 + 2.5 * R * unit(rng);
            const double a = angle();
            const Vec2 rel{d * std::cos(a), d * std::sin(a)};
            const double h = 1e-6 * std::max(1.0, d);
            const Vec2 fd{(target_potential({rel.x + h, rel.y}, R) -
                           target_potential({rel.x - h, rel.y}, R)) /
                              (2.0 * h),
                          (target_potential({rel.x, rel.y + h}, R) -
                           target_potential({rel.x, rel.y - h}, R)) /
                              (2.0 * h)};
            check_pair(fd, target_gradient(rel, R));
        }
        for (int trial = 0; trial < 3000; ++trial) {
            const double r = 0.5 + 4.0 * unit(rng);
            const double d = 0.05 + 2.5 * r * unit(rng);
            const double a = angle();
            const Vec2 rel{d * std::cos(a), d * std::sin(a)};
            const double h = 1e-6 * std::max(1.0, d);
            const Vec2 fd{(quadratic_potential({rel.x + h, rel.y}, r) -
                           quadratic_potential({rel.x - h, rel.y}, r)) /
                              (2.0 * h),
                          (quadratic_potential({rel.x, rel.y + h}, r) -
                           quadratic_potential({rel.x, rel.y - h}, r)) /
                              (2.0 * h)};
            check_pair(fd, quadratic_gradient(rel, r));
        }
        const bool pass = failed == 0 && checked >= 10000;
        tally(report(7, pass,
                     "finite-difference gradient agreement: " + std::to_string(failed) +
                         " failures over " + std::to_string(checked) + " inputs"));
    }

    // 8: at the all-at-reference configuration both laws command exactly the
    //    target velocity before saturation.
    {
        const Gains gains{0.03, 0.01};
        const SaturationSpec sat{3.0};
        const Vec2 v_t{0.2, 0.2};
        double worst = 0.0;

        // Axis-aligned exact geometry.
        {
            LocalView view;
            view.rel_target = {2.0, 0.0};
            view.target_velocity = v_t;
            view.standoff_radius = 2.0;
            view.neighbors = {{{2.0, 0.0}, {2.0, 1.8, 2.2}}, {{0.0, -3.46}, {3.46, 3.2, 3.6}}};
            worst = std::max(worst, (blf_control(view, gains, sat).raw - v_t).norm());
            worst = std::max(worst, (qlf_control(view, gains, sat).raw - v_t).norm());
        }

        // The reference triangle about its circumcenter, standoffs set to the
        // realized distances.
        {
            const Scenario sc = noise_free(load_preset("paper_linear"));
            const double apex_x = 2.0071;
            const std::vector<Vec2> p = {
                {0.0, 0.0}, {2.0, 0.0}, {apex_x, std::sqrt(16.0 - apex_x * apex_x)}};
            // Circumcenter: equidistant from all three vertices.
            const Vec2 a = p[1] - p[0], b = p[2] - p[0];
            const double d = 2.0 * a.cross(b);
            const Vec2 center = p[0] + Vec2{b.y * a.norm_sq() - a.y * b.norm_sq(),
                                            a.x * b.norm_sq() - b.x * a.norm_sq()} /
                                            d;
            for (std::size_t k = 0; k < 3; ++k) {
                LocalView view;
                view.rel_target = p[k] - center;
                view.target_velocity = v_t;
                view.standoff_radius = view.rel_target.norm();
                for (const Neighbor& nb : sc.graph.neighbors(static_cast<AgentId>(k))) {
                    EdgeBounds eb = nb.bounds;
                    eb.r = (p[k] - p[nb.id]).norm();  // exact realized separation
                    view.neighbors.push_back({p[k] - p[nb.id], eb});
                }
                worst = std::max(worst, (blf_control(view, gains, sat).raw - v_t).norm());
                worst = std::max(worst, (qlf_control(view, gains, sat).raw - v_t).norm());
            }
        }
        const bool pass = worst <= 1e-12;
        tally(report(8, pass, "equilibrium command identity: max deviation " + fmt(worst)));
    }

    // 9: identical scenario and seed reproduce the trace byte for byte.
    {
        const Scenario sc = load_preset("paper_linear");
        const std::string first = trace_csv(run(sc), sc);
        const std::string second = trace_csv(run(sc), sc);
        const bool pass = first == second && !first.empty();
        tally(report(9, pass,
                     "byte-identical reruns: " + std::to_string(first.size()) + " bytes"));
    }

    // 10: on the circular course every agent settles onto its standoff
    //     circle and stays there.
    {
        Scenario sc = noise_free(load_preset("paper_circular"));
        sc.duration = 200.0;
        const Trace trace = run(sc);
        double worst = 0.0;
        for (const TraceSample& s : trace.samples) {
            if (s.t < 180.0) continue;
            for (std::size_t k = 0; k < s.target_distances.size(); ++k)
                worst = std::max(worst,
                                 std::abs(s.target_distances[k] - sc.standoffs.radii[k]));
        }
        const bool pass = worst < 0.05;
        tally(report(10, pass,
                     "standoff-circle capture over the final 20 s: max |d - R| = " + fmt(worst)));
    }

    if (failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criteria failed\n", failures);
    }
    return failures;
}
