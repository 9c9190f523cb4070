#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "formtrack/control.hpp"
#include "formtrack/formation.hpp"
#include "formtrack/rng.hpp"
#include "formtrack/target.hpp"
#include "formtrack/vec2.hpp"

namespace formtrack {

struct SwarmState {
    double t = 0.0;
    std::vector<Vec2> positions;
};

/// Additive gaussian noise: sd_velocity on each component of the target
/// velocity estimate, sd_distance on every measured range (direction is
/// preserved, only the length is perturbed). Zero sd skips the draw entirely,
/// so noise-free runs never touch the generator.
struct NoiseSpec {
    double sd_velocity = 0.0;
    double sd_distance = 0.0;
    std::uint64_t seed = 0;

    bool any() const { return sd_velocity > 0.0 || sd_distance > 0.0; }
};

/// With piecewise-constant commands the dynamics are constant over a step,
/// so every explicit Runge-Kutta scheme collapses to x + dt*u. Both entries
/// produce identical trajectories; the enum records the configured intent.
enum class Integrator {
    ExplicitEuler,
    RK4HeldControl,
};

struct IntegrationSpec {
    double dt = 0.01;
    Integrator scheme = Integrator::ExplicitEuler;
    int max_substeps = 8;  // power-of-two halving limit for guarded stepping
};

/// Addresses one measurement batch in the counter-based noise stream.
/// substep 0 is the primary evaluation at the step start; guarded substep
/// re-evaluations use labels n+i (attempt with n substeps, evaluation i>=1),
/// which are disjoint across attempts.
struct MeasurementSlot {
    std::uint64_t step = 0;
    std::uint64_t substep = 0;
};

/// Build each agent's measured view of the world: noisy target velocity
/// estimate, noisy target range, noisy neighbor ranges. Neighbor order
/// follows the graph adjacency (sorted by id). A coincident pair (zero true
/// range) is passed through unperturbed since it has no direction to scale.
std::vector<LocalView> observe(const SwarmState& state, const TargetState& target,
                               const FormationGraph& graph, const StandoffSpec& standoffs,
                               const NoiseSpec& noise, MeasurementSlot slot);

/// One explicit step of x' = u with the given held commands. Throws
/// NonFiniteState if any resulting coordinate is not finite.
SwarmState step(const SwarmState& state, const std::vector<ControlResult>& controls, double dt);

/// Re-evaluates controls at a substep start; the label feeds the noise slot.
using ControlFn =
    std::function<std::vector<ControlResult>(const SwarmState& state, std::uint32_t substep_label)>;

struct GuardedStepResult {
    SwarmState state;
    bool breach = false;      // halving exhausted, committed step leaves the admissible set
    int substeps = 1;         // substep count of the committed attempt
    int extra_clamps = 0;     // measurement clamps from substep re-evaluations (committed attempt)
    int extra_saturated = 0;  // saturated commands from those same re-evaluations
};

/// Advance one step of size spec.dt while trying to keep the state inside the
/// admissible set. Starts with the plain step; if the landing violates a bound
/// the step is retried with 2, 4, ... substeps (up to spec.max_substeps),
/// re-measuring and re-evaluating controls at each substep start. If every
/// attempt fails the plain step is committed and breach is set. A start state
/// already outside the admissible set takes the plain step unguarded. The
/// landing time is exactly state.t + spec.dt.
GuardedStepResult guarded_step(const SwarmState& state, const std::vector<ControlResult>& first_eval,
                               const ControlFn& control_fn, const FormationGraph& graph,
                               const IntegrationSpec& spec);

}  // namespace formtrack
