#include "formtrack/world.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "formtrack/errors.hpp"

namespace formtrack {

namespace {

// Scale a relative vector so its length matches the noisy range reading.
// Physical ranges cannot go negative, so the reading is floored at zero.
RelVec apply_range_noise(RelVec rel, double d, double noise) {
    const double measured = std::max(d + noise, 0.0);
    return rel * (measured / d);
}

}  // namespace

std::vector<LocalView> observe(const SwarmState& state, const TargetState& target,
                               const FormationGraph& graph, const StandoffSpec& standoffs,
                               const NoiseSpec& noise, MeasurementSlot slot) {
    const std::size_t n = graph.agent_count();
    if (state.positions.size() != n) throw ValidationError("state/graph agent count mismatch");
    if (standoffs.radii.size() != n) throw ValidationError("standoff/graph agent count mismatch");

    std::vector<LocalView> views(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        LocalView& view = views[k];
        view.standoff_radius = standoffs.radii[k];

        view.target_velocity = target.velocity;
        if (noise.sd_velocity > 0.0) {
            const GaussianPair g = gaussian_pair(noise.seed, k, NoisePurpose::TargetVelocity, 0,
                                                 slot.step, slot.substep);
            view.target_velocity += noise.sd_velocity * Vec2{g.a, g.b};
        }

        view.rel_target = state.positions[k] - target.position;
        const double dt_range = view.rel_target.norm();
        if (noise.sd_distance > 0.0 && dt_range > 0.0) {
            const GaussianPair g = gaussian_pair(noise.seed, k, NoisePurpose::TargetRange, 0,
                                                 slot.step, slot.substep);
            view.rel_target = apply_range_noise(view.rel_target, dt_range, noise.sd_distance * g.a);
        }

        for (const Neighbor& nb : graph.neighbors(k)) {
            RelVec rel = state.positions[k] - state.positions[nb.id];
            const double d = rel.norm();
            if (noise.sd_distance > 0.0 && d > 0.0) {
                const GaussianPair g =
                    gaussian_pair(noise.seed, k, NoisePurpose::NeighborRange,
                                  static_cast<std::uint16_t>(nb.id), slot.step, slot.substep);
                rel = apply_range_noise(rel, d, noise.sd_distance * g.a);
            }
            view.neighbors.push_back({rel, nb.bounds});
        }
    }
    return views;
}

SwarmState step(const SwarmState& state, const std::vector<ControlResult>& controls, double dt) {
    if (controls.size() != state.positions.size())
        throw ValidationError("control/state agent count mismatch");
    SwarmState next;
    next.t = state.t + dt;
    next.positions.reserve(state.positions.size());
    for (std::size_t i = 0; i < state.positions.size(); ++i) {
        const Vec2 p = state.positions[i] + dt * controls[i].command;
        if (!p.finite())
            throw NonFiniteState("agent " + std::to_string(i) + " left finite range at t=" +
                                 std::to_string(next.t));
        next.positions.push_back(p);
    }
    return next;
}

GuardedStepResult guarded_step(const SwarmState& state, const std::vector<ControlResult>& first_eval,
                               const ControlFn& control_fn, const FormationGraph& graph,
                               const IntegrationSpec& spec) {
    GuardedStepResult out;
    const bool feasible_entry = in_admissible_set(graph, state.positions);

    SwarmState plain = step(state, first_eval, spec.dt);
    if (!feasible_entry || in_admissible_set(graph, plain.positions)) {
        out.state = std::move(plain);
        return out;
    }

    for (int n = 2; n <= spec.max_substeps; n *= 2) {
        SwarmState cur = state;
        int clamps = 0;
        int saturated = 0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            // Every substep start re-evaluates, including i = 0: near a bound
            // the committed first_eval may rest on a single noisy range whose
            // stale command would cross regardless of substep length.
            const std::vector<ControlResult> fresh =
                control_fn(cur, static_cast<std::uint32_t>(n + i));
            for (const ControlResult& c : fresh) {
                clamps += c.clamped_measurements;
                saturated += c.saturated ? 1 : 0;
            }
            cur = step(cur, fresh, spec.dt / n);
            // Anchor the time to the step start so the landing is exact.
            cur.t = state.t + spec.dt * (static_cast<double>(i + 1) / static_cast<double>(n));
            ok = in_admissible_set(graph, cur.positions);
        }
        if (ok) {
            out.state = std::move(cur);
            out.substeps = n;
            out.extra_clamps = clamps;
            out.extra_saturated = saturated;
            return out;
        }
    }

    out.state = std::move(plain);
    out.breach = true;
    return out;
}

}  // namespace formtrack
