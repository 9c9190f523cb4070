#include "formtrack/potentials.hpp"

#include <string>

namespace formtrack {

namespace {

// Shared domain check for the barrier pair. Works on squared distance so the
// potential and gradient agree bit-for-bit on where the domain ends.
struct BarrierTerms {
    double a;  // d^2 - r^2
    double b;  // (r_hi^2 - d^2) * (d^2 - r_lo^2)
    double c;  // r_hi^2 - 2 d^2 + r_lo^2
};

BarrierTerms barrier_terms(double d_sq, const EdgeBounds& bounds) {
    const double lo_sq = bounds.r_lo * bounds.r_lo;
    const double hi_sq = bounds.r_hi * bounds.r_hi;
    if (!(lo_sq < d_sq && d_sq < hi_sq)) {
        throw OutOfDomain("distance " + std::to_string(std::sqrt(d_sq)) +
                          " outside open interval (" + std::to_string(bounds.r_lo) + ", " +
                          std::to_string(bounds.r_hi) + ")");
    }
    const double a = d_sq - bounds.r * bounds.r;
    const double b = (hi_sq - d_sq) * (d_sq - lo_sq);
    const double c = hi_sq - 2.0 * d_sq + lo_sq;
    return {a, b, c};
}

}  // namespace

double target_potential(RelVec rel, double standoff_radius) {
    const double a = rel.norm_sq() - standoff_radius * standoff_radius;
    return 0.25 * a * a;
}

Vec2 target_gradient(RelVec rel, double standoff_radius) {
    return rel * (rel.norm_sq() - standoff_radius * standoff_radius);
}

double barrier_potential(RelVec rel, const EdgeBounds& bounds) {
    const BarrierTerms t = barrier_terms(rel.norm_sq(), bounds);
    return 0.5 * t.a * t.a / t.b;
}

Vec2 barrier_gradient(RelVec rel, const EdgeBounds& bounds) {
    const BarrierTerms t = barrier_terms(rel.norm_sq(), bounds);
    return rel * (t.a * (2.0 * t.b - t.a * t.c) / (t.b * t.b));
}

double quadratic_potential(RelVec rel, double rest_length) {
    const double a = rel.norm_sq() - rest_length * rest_length;
    return 0.25 * a * a;
}

Vec2 quadratic_gradient(RelVec rel, double rest_length) {
    return rel * (rel.norm_sq() - rest_length * rest_length);
}

PotentialReport combined_potential(std::span<const Vec2> positions, Vec2 target_position,
                                   const FormationGraph& graph, const StandoffSpec& standoffs,
                                   const Gains& gains) {
    PotentialReport report;
    for (std::size_t k = 0; k < positions.size(); ++k) {
        report.target += target_potential(positions[k] - target_position, standoffs.radii[k]);
    }
    for (const Edge& e : graph.edges()) {
        const RelVec rel = positions[e.i] - positions[e.j];
        report.barrier += barrier_potential(rel, e.bounds);
        report.quadratic += quadratic_potential(rel, e.bounds.r);
    }
    report.combined = gains.k_target * report.target + gains.k_formation * report.barrier;
    return report;
}

}  // namespace formtrack
