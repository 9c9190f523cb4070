#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "formtrack/control.hpp"
#include "formtrack/formation.hpp"
#include "formtrack/potentials.hpp"
#include "formtrack/target.hpp"
#include "formtrack/vec2.hpp"
#include "formtrack/world.hpp"

namespace formtrack {

enum class ControlLaw {
    BLF,  // barrier law, gradients diverge at the distance bounds
    QLF,  // quadratic baseline, no bound enforcement
};

/// Complete description of one simulation run. Plain data; validate() is the
/// single gate every entry path (presets, files, bindings) goes through.
struct Scenario {
    std::string name;
    FormationGraph graph;
    StandoffSpec standoffs;
    Gains gains;
    SaturationSpec saturation;
    TargetSpec target;
    NoiseSpec noise;
    IntegrationSpec integration;
    std::vector<Vec2> initial_positions;
    ControlLaw law = ControlLaw::BLF;
    double duration = 0.0;

    /// Throws ValidationError. For the barrier law the initial configuration
    /// must lie inside the admissible set; the target's top speed must stay
    /// strictly below the saturation limit.
    void validate() const;
};

/// One recorded instant. Controls are the commands evaluated at this sample
/// (they drive the step leaving it). Event flags cover this sample's control
/// evaluation plus anything that happened during the guarded step arriving
/// here (substep re-evaluations, halving exhaustion).
struct TraceSample {
    double t = 0.0;
    Vec2 target_position;
    Vec2 target_velocity;
    std::vector<Vec2> positions;
    std::vector<Vec2> raw_controls;  // pre-saturation
    std::vector<Vec2> controls;      // post-saturation
    std::vector<double> target_distances;
    std::vector<double> edge_distances;  // canonical edge order
    PotentialReport potentials;
    /// k_target * target + k_formation * (barrier or quadratic, per law).
    /// +infinity when a barrier-law configuration sits outside the
    /// admissible set.
    double active_potential = 0.0;
    bool breach = false;
    int clamps = 0;
    bool saturated = false;
    bool reorder = false;  // cyclic order differs from the run's baseline
};

struct Trace {
    std::vector<TraceSample> samples;
};

/// Simulate the scenario. Samples are recorded at t = 0, dt, ..., duration
/// (duration/dt rounded to the nearest whole step). Deterministic: identical
/// scenarios produce identical traces bit for bit.
Trace run(const Scenario& scenario);

/// Orientation of the agent arrangement in index order: +1 counterclockwise,
/// -1 clockwise, 0 degenerate. Three agents use the exact cross-product sign
/// of (x1 - x0) x (x2 - x0); larger groups use the winding of the index walk
/// around the centroid. A sign change against the run's first nonzero value
/// is what the trace flags as a reorder.
int cyclic_order(std::span<const Vec2> positions);

/// First time the cyclic order flips sign against the run's baseline. A
/// touch of zero without a flip does not count.
std::optional<double> detect_reorder(const Trace& trace);

/// One step where the active potential rose by more than the tolerance.
struct WIncreaseInterval {
    std::size_t index = 0;  // sample index the step starts at
    double t0 = 0.0;
    double t1 = 0.0;
    double delta = 0.0;  // W(t1) - W(t0), positive
};

/// Scan a trace for potential increases beyond discretization error. Steps
/// touching an event sample (saturation, measurement clamp, breach) are
/// exempt: the decrease argument assumes the unconstrained law. The
/// tolerance is calibrated by re-simulating the scenario at dt and dt/2 and
/// taking 10x the 95th-percentile |W| mismatch at shared sample times, plus
/// a relative floor. Calibration never reads the trace under test, so a
/// tampered sample cannot raise its own threshold.
std::vector<WIncreaseInterval> lyapunov_monitor(const Trace& trace, const Scenario& scenario);

/// Design robustness margin: the tightest edge margin min(r - r_lo, r_hi - r)
/// over all edges, in units of the distance-noise standard deviation.
/// Throws ZeroNoise when sd_distance is zero.
double gamma_metric(const FormationGraph& graph, const NoiseSpec& noise);

struct EdgeRange {
    AgentId i = 0;
    AgentId j = 0;
    double min_distance = 0.0;
    double max_distance = 0.0;
};

struct MetricsReport {
    std::vector<EdgeRange> edge_ranges;
    std::size_t bound_violation_samples = 0;  // samples with an edge outside its interval
    std::size_t breach_events = 0;
    std::size_t clamp_events = 0;  // total clamped measurements
    std::size_t saturated_samples = 0;
    std::optional<double> reorder_time;   // first cyclic-order flip
    std::optional<double> settling_time;  // velocity consensus reached and held
    double settling_tolerance = 0.0;
    double final_velocity_error = 0.0;   // max_k ||u_k - v_T|| at the last sample
    double max_control_magnitude = 0.0;  // post-saturation, over the whole run
    std::optional<double> gamma;         // absent for noise-free runs
    std::vector<WIncreaseInterval> w_increase_intervals;
};

/// Aggregate a finished run. settling_time is the earliest sample from which
/// max_k ||u_k - v_T|| stays below settling_tolerance through the end.
MetricsReport summarize(const Trace& trace, const Scenario& scenario,
                        double settling_tolerance = 1e-2);

}  // namespace formtrack
