#pragma once

#include <span>

#include "formtrack/formation.hpp"
#include "formtrack/vec2.hpp"

namespace formtrack {

/// Control gains. Both must be positive.
struct Gains {
    double k_target = 0.0;     // weights the target-tracking term
    double k_formation = 0.0;  // weights the inter-agent terms
};

/// Potential sums over a whole swarm configuration. The barrier sum (and
/// hence the combined value) is finite only while the configuration is in
/// the admissible set; outside it they are +infinity.
struct PotentialReport {
    double target = 0.0;     // sum of per-agent standoff potentials
    double barrier = 0.0;    // sum of per-edge barrier potentials
    double quadratic = 0.0;  // sum of per-edge quadratic potentials
    double combined = 0.0;   // k_target * target + k_formation * barrier
};

/// Standoff potential: (||rel||^2 - R^2)^2 / 4. Zero exactly on the circle.
double target_potential(RelVec rel, double standoff_radius);

/// Gradient of target_potential with respect to rel, in cancel form
/// (||rel||^2 - R^2) * rel -- continuous at rel = 0.
Vec2 target_gradient(RelVec rel, double standoff_radius);

/// Barrier potential, defined for r_lo < ||rel|| < r_hi only:
///   (d^2 - r^2)^2 / (2 * (r_hi^2 - d^2) * (d^2 - r_lo^2)).
/// Zero exactly at d = r, diverging at either bound. Throws OutOfDomain at
/// or beyond a bound.
double barrier_potential(RelVec rel, const EdgeBounds& bounds);

/// Gradient of barrier_potential in cancel form:
///   a * (2b - a*(r_hi^2 - 2d^2 + r_lo^2)) / b^2 * rel
/// with a = d^2 - r^2 and b = (r_hi^2 - d^2)(d^2 - r_lo^2).
/// Throws OutOfDomain at or beyond a bound.
Vec2 barrier_gradient(RelVec rel, const EdgeBounds& bounds);

/// Unconstrained baseline potential: (||rel||^2 - r^2)^2 / 4.
double quadratic_potential(RelVec rel, double rest_length);

/// Gradient of quadratic_potential in cancel form (||rel||^2 - r^2) * rel.
Vec2 quadratic_gradient(RelVec rel, double rest_length);

/// Evaluates all potential sums for a configuration. Throws OutOfDomain if
/// any edge distance is at or beyond a bound.
PotentialReport combined_potential(std::span<const Vec2> positions, Vec2 target_position,
                                   const FormationGraph& graph, const StandoffSpec& standoffs,
                                   const Gains& gains);

}  // namespace formtrack
