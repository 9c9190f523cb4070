#include "formtrack/control.hpp"

#include <cmath>

namespace formtrack {

Vec2 saturate(Vec2 u, const SaturationSpec& spec) {
    const double n = u.norm();
    if (n <= spec.u_max || n == 0.0) return u;
    return u * (spec.u_max / n);
}

namespace {

// Pull a measured offset back into the open interval so the barrier
// gradient stays finite. Returns false when the measurement has no usable
// direction (zero length) and the term must be skipped.
bool clamp_measurement(RelVec& rel, const EdgeBounds& bounds, int& clamps) {
    const double d = rel.norm();
    if (bounds.contains(d)) return true;
    if (d == 0.0) {
        ++clamps;
        return false;
    }
    const double lo = bounds.r_lo * (1.0 + kMeasurementClampEps);
    const double hi = bounds.r_hi * (1.0 - kMeasurementClampEps);
    const double clamped = d <= bounds.r_lo ? lo : hi;
    rel = rel * (clamped / d);
    ++clamps;
    return true;
}

ControlResult assemble(Vec2 raw, const SaturationSpec& spec, int clamps) {
    ControlResult out;
    out.raw = raw;
    out.command = saturate(raw, spec);
    out.saturated = raw.norm() > spec.u_max;
    out.clamped_measurements = clamps;
    return out;
}

}  // namespace

ControlResult blf_control(const LocalView& view, const Gains& gains, const SaturationSpec& spec) {
    Vec2 u = view.target_velocity - gains.k_target * target_gradient(view.rel_target, view.standoff_radius);
    int clamps = 0;
    for (const NeighborMeasurement& m : view.neighbors) {
        RelVec rel = m.rel;
        if (!clamp_measurement(rel, m.bounds, clamps)) continue;
        u -= gains.k_formation * barrier_gradient(rel, m.bounds);
    }
    return assemble(u, spec, clamps);
}

ControlResult qlf_control(const LocalView& view, const Gains& gains, const SaturationSpec& spec) {
    Vec2 u = view.target_velocity - gains.k_target * target_gradient(view.rel_target, view.standoff_radius);
    for (const NeighborMeasurement& m : view.neighbors) {
        u -= gains.k_formation * quadratic_gradient(m.rel, m.bounds.r);
    }
    return assemble(u, spec, 0);
}

}  // namespace formtrack
