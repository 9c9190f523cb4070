#include "formtrack/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "formtrack/errors.hpp"

namespace formtrack {

void Scenario::validate() const {
    const std::size_t n = graph.agent_count();
    if (n == 0) throw ValidationError("scenario has no formation graph");
    if (initial_positions.size() != n)
        throw ValidationError("initial positions must match the agent count");
    for (const Vec2& p : initial_positions)
        if (!p.finite()) throw ValidationError("initial positions must be finite");
    if (standoffs.radii.size() != n)
        throw ValidationError("standoff radii must match the agent count");
    for (double r : standoffs.radii)
        if (!(r > 0.0)) throw ValidationError("standoff radii must be positive");
    if (!(gains.k_target > 0.0) || !(gains.k_formation > 0.0))
        throw ValidationError("gains must be positive");
    if (!(saturation.u_max > 0.0)) throw ValidationError("u_max must be positive");
    if (!(duration >= 0.0)) throw ValidationError("duration must be non-negative");
    if (!(integration.dt > 0.0)) throw ValidationError("dt must be positive");
    if (integration.max_substeps < 1) throw ValidationError("max_substeps must be at least 1");
    if (noise.sd_velocity < 0.0 || noise.sd_distance < 0.0)
        throw ValidationError("noise standard deviations must be non-negative");
    target.validate();
    if (!(target.max_speed() < saturation.u_max))
        throw ValidationError("target top speed must stay strictly below u_max");
    if (law == ControlLaw::BLF && !in_admissible_set(graph, initial_positions))
        throw ValidationError("barrier law requires an initially admissible formation");
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

int cyclic_order(std::span<const Vec2> positions) {
    const std::size_t n = positions.size();
    if (n < 3) return 0;
    if (n == 3)
        return sign_of((positions[1] - positions[0]).cross(positions[2] - positions[0]));

    // General form: winding of the index walk around the centroid.
    Vec2 c;
    for (const Vec2& p : positions) c += p;
    c = c / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = positions[i] - c;
        const Vec2 b = positions[(i + 1) % n] - c;
        if (a.norm_sq() == 0.0 || b.norm_sq() == 0.0) return 0;  // agent on the centroid
        total += std::atan2(a.cross(b), a.dot(b));
    }
    return sign_of(total);
}

std::optional<double> detect_reorder(const Trace& trace) {
    for (const TraceSample& s : trace.samples)
        if (s.reorder) return s.t;
    return std::nullopt;
}

namespace {

TraceSample make_sample(const SwarmState& state, const TargetState& ts,
                        const std::vector<ControlResult>& controls, const Scenario& sc) {
    TraceSample s;
    s.t = state.t;
    s.target_position = ts.position;
    s.target_velocity = ts.velocity;
    s.positions = state.positions;

    s.raw_controls.reserve(controls.size());
    s.controls.reserve(controls.size());
    for (const ControlResult& c : controls) {
        s.raw_controls.push_back(c.raw);
        s.controls.push_back(c.command);
        s.clamps += c.clamped_measurements;
        s.saturated = s.saturated || c.saturated;
    }

    s.target_distances.reserve(state.positions.size());
    for (const Vec2& p : state.positions) s.target_distances.push_back((p - ts.position).norm());

    const auto edges = sc.graph.edges();
    s.edge_distances.reserve(edges.size());
    for (const Edge& e : edges)
        s.edge_distances.push_back((state.positions[e.i] - state.positions[e.j]).norm());

    if (in_admissible_set(sc.graph, state.positions)) {
        s.potentials =
            combined_potential(state.positions, ts.position, sc.graph, sc.standoffs, sc.gains);
    } else {
        // Barrier terms are undefined here; report the finite components and
        // mark the barrier-dependent sums as infinite.
        PotentialReport p;
        for (std::size_t k = 0; k < state.positions.size(); ++k)
            p.target += target_potential(state.positions[k] - ts.position, sc.standoffs.radii[k]);
        for (std::size_t e = 0; e < edges.size(); ++e)
            p.quadratic += quadratic_potential(state.positions[edges[e].i] - state.positions[edges[e].j],
                                               edges[e].bounds.r);
        p.barrier = std::numeric_limits<double>::infinity();
        p.combined = std::numeric_limits<double>::infinity();
        s.potentials = p;
    }

    s.active_potential =
        sc.law == ControlLaw::BLF
            ? s.potentials.combined
            : sc.gains.k_target * s.potentials.target + sc.gains.k_formation * s.potentials.quadratic;
    return s;
}

}  // namespace

Trace run(const Scenario& scenario) {
    scenario.validate();
    auto target = make_target(scenario.target);
    const double dt = scenario.integration.dt;
    const auto n_steps = static_cast<std::uint64_t>(std::llround(scenario.duration / dt));

    SwarmState state;
    state.positions = scenario.initial_positions;

    std::uint64_t current_step = 0;
    const ControlFn eval = [&](const SwarmState& s, std::uint32_t substep_label) {
        const TargetState ts = target->sample(s.t);
        const auto views = observe(s, ts, scenario.graph, scenario.standoffs, scenario.noise,
                                   {current_step, substep_label});
        std::vector<ControlResult> out;
        out.reserve(views.size());
        for (const LocalView& view : views)
            out.push_back(scenario.law == ControlLaw::BLF
                              ? blf_control(view, scenario.gains, scenario.saturation)
                              : qlf_control(view, scenario.gains, scenario.saturation));
        return out;
    };

    Trace trace;
    trace.samples.reserve(n_steps + 1);
    int baseline_order = 0;
    bool arrived_breach = false;
    int arrived_clamps = 0;
    int arrived_saturated = 0;

    for (std::uint64_t s = 0; s <= n_steps; ++s) {
        current_step = s;
        const TargetState ts = target->sample(state.t);
        const std::vector<ControlResult> controls = eval(state, 0);

        TraceSample sample = make_sample(state, ts, controls, scenario);
        sample.breach = arrived_breach;
        sample.clamps += arrived_clamps;
        sample.saturated = sample.saturated || arrived_saturated > 0;
        const int order = cyclic_order(sample.positions);
        if (baseline_order == 0) baseline_order = order;
        sample.reorder = baseline_order != 0 && order != 0 && order != baseline_order;
        trace.samples.push_back(std::move(sample));
        if (s == n_steps) break;

        GuardedStepResult g =
            guarded_step(state, controls, eval, scenario.graph, scenario.integration);
        state = std::move(g.state);
        // Rebase the clock on the step index so timestamps carry no
        // accumulated rounding.
        state.t = static_cast<double>(s + 1) * dt;
        arrived_breach = g.breach;
        arrived_clamps = g.extra_clamps;
        arrived_saturated = g.extra_saturated;
    }
    return trace;
}

std::vector<WIncreaseInterval> lyapunov_monitor(const Trace& trace, const Scenario& scenario) {
    const auto& samples = trace.samples;
    std::vector<WIncreaseInterval> out;
    if (samples.size() < 2) return out;

    const auto finite_w = [](const TraceSample& s) { return std::isfinite(s.active_potential); };
    const auto has_event = [](const TraceSample& s) {
        return s.saturated || s.clamps > 0 || s.breach;
    };

    double w_max = 0.0;
    for (const TraceSample& s : samples)
        if (finite_w(s)) w_max = std::max(w_max, std::abs(s.active_potential));

    // Discretization-error oracle: simulate the scenario at dt and dt/2 and
    // compare W at shared sample times. The mismatch envelope is the scale of
    // Euler error, including any dt-limited cycle around a moving optimum.
    // Calibration runs fresh so the trace under test cannot influence it.
    std::vector<double> mismatch;
    {
        Scenario coarse = scenario;
        coarse.duration =
            static_cast<double>(samples.size() - 1) * scenario.integration.dt;
        Scenario fine = coarse;
        fine.integration.dt = 0.5 * coarse.integration.dt;
        const Trace ct = run(coarse);
        const Trace ft = run(fine);
        const std::size_t n = std::min(ct.samples.size(), (ft.samples.size() + 1) / 2);
        mismatch.reserve(n);
        for (std::size_t s = 0; s < n; ++s) {
            const double wc = ct.samples[s].active_potential;
            const double wf = ft.samples[2 * s].active_potential;
            if (std::isfinite(wc) && std::isfinite(wf)) mismatch.push_back(std::abs(wc - wf));
        }
    }
    double scale = 0.0;
    if (!mismatch.empty()) {
        std::sort(mismatch.begin(), mismatch.end());
        const std::size_t idx =
            std::min(mismatch.size() - 1, (mismatch.size() * 95 + 99) / 100 - 1);  // nearest rank
        scale = mismatch[idx];
    }
    const double tol = 10.0 * scale + 1e-12 * (1.0 + w_max);

    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (has_event(samples[i]) || has_event(samples[i + 1])) continue;
        if (!finite_w(samples[i]) || !finite_w(samples[i + 1])) continue;
        const double delta = samples[i + 1].active_potential - samples[i].active_potential;
        if (delta > tol) out.push_back({i, samples[i].t, samples[i + 1].t, delta});
    }
    return out;
}

double gamma_metric(const FormationGraph& graph, const NoiseSpec& noise) {
    if (!(noise.sd_distance > 0.0))
        throw ZeroNoise("robustness margin is undefined without distance noise");
    double margin = std::numeric_limits<double>::infinity();
    for (const Edge& e : graph.edges()) margin = std::min(margin, e.bounds.margin());
    return margin / noise.sd_distance;
}

MetricsReport summarize(const Trace& trace, const Scenario& scenario, double settling_tolerance) {
    MetricsReport r;
    r.settling_tolerance = settling_tolerance;
    const auto& samples = trace.samples;
    const auto edges = scenario.graph.edges();

    r.edge_ranges.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double d0 = samples.empty() ? 0.0 : samples.front().edge_distances[e];
        r.edge_ranges.push_back({edges[e].i, edges[e].j, d0, d0});
    }
    if (samples.empty()) return r;

    for (const TraceSample& s : samples) {
        bool violated = false;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const double d = s.edge_distances[e];
            r.edge_ranges[e].min_distance = std::min(r.edge_ranges[e].min_distance, d);
            r.edge_ranges[e].max_distance = std::max(r.edge_ranges[e].max_distance, d);
            violated = violated || !edges[e].bounds.contains(d);
        }
        if (violated) ++r.bound_violation_samples;
        if (s.breach) ++r.breach_events;
        r.clamp_events += static_cast<std::size_t>(s.clamps);
        if (s.saturated) ++r.saturated_samples;
        for (const Vec2& u : s.controls)
            r.max_control_magnitude = std::max(r.max_control_magnitude, u.norm());
    }
    r.reorder_time = detect_reorder(trace);

    const auto velocity_error = [](const TraceSample& s) {
        double m = 0.0;
        for (const Vec2& u : s.controls) m = std::max(m, (u - s.target_velocity).norm());
        return m;
    };
    r.final_velocity_error = velocity_error(samples.back());
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        if (velocity_error(*it) < settling_tolerance)
            r.settling_time = it->t;
        else
            break;
    }

    if (scenario.noise.sd_distance > 0.0)
        r.gamma = gamma_metric(scenario.graph, scenario.noise);
    r.w_increase_intervals = lyapunov_monitor(trace, scenario);
    return r;
}

}  // namespace formtrack
