#pragma once

#include <vector>

#include "formtrack/formation.hpp"
#include "formtrack/potentials.hpp"
#include "formtrack/vec2.hpp"

namespace formtrack {

/// Radial speed limit on commanded velocities.
struct SaturationSpec {
    double u_max = 0.0;
};

/// One measured neighbor offset together with the edge's bounds.
struct NeighborMeasurement {
    RelVec rel;  // x_k - x_j as measured
    EdgeBounds bounds;
};

/// Everything one agent is allowed to use when computing its command:
/// measured offsets, the target velocity estimate and its own standoff
/// radius. Control laws are functions of this view alone.
struct LocalView {
    RelVec rel_target;      // x_k - x_T as measured
    Vec2 target_velocity;   // v_T estimate
    double standoff_radius = 0.0;
    std::vector<NeighborMeasurement> neighbors;
};

/// One agent's evaluated command.
struct ControlResult {
    Vec2 command;  // post-saturation; ||command|| <= u_max
    Vec2 raw;      // pre-saturation
    bool saturated = false;
    int clamped_measurements = 0;  // barrier-law inputs pulled back into domain
};

// Out-of-interval neighbor measurements are pulled back to
// [r_lo*(1+eps), r_hi*(1-eps)] before the barrier gradient is evaluated.
inline constexpr double kMeasurementClampEps = 1e-6;

/// Radial clipping: u unchanged if ||u|| <= u_max, otherwise scaled to
/// magnitude u_max with direction preserved. Zero maps to zero.
Vec2 saturate(Vec2 u, const SaturationSpec& spec);

/// Barrier-law command:
///   sat(v_T - k_target * target_gradient - k_formation * sum of barrier gradients).
/// Measured neighbor distances outside their open interval are clamped back
/// inside (see kMeasurementClampEps) and counted in clamped_measurements.
ControlResult blf_control(const LocalView& view, const Gains& gains, const SaturationSpec& spec);

/// Quadratic-law command (no distance constraints, globally defined):
///   sat(v_T - k_target * target_gradient - k_formation * sum of quadratic gradients).
ControlResult qlf_control(const LocalView& view, const Gains& gains, const SaturationSpec& spec);

}  // namespace formtrack
