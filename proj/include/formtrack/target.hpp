#pragma once

#include <memory>

#include "formtrack/vec2.hpp"

namespace formtrack {

struct TargetState {
    Vec2 position;
    Vec2 velocity;
};

enum class TargetKind {
    Stationary,
    Linear,
    Circular,
    Chained,
};

/// Plain-data description of target motion. Chained targets pursue another
/// target at a standoff with a held piecewise-constant command, which is how
/// multi-level pursuit scenarios are composed.
struct TargetSpec {
    TargetKind kind = TargetKind::Stationary;

    // Stationary / Linear: start position. Chained: pursuer start.
    Vec2 position;
    // Linear only.
    Vec2 velocity;

    // Circular only.
    Vec2 center;
    double radius = 0.0;
    double angular_rate = 0.0;
    double phase = 0.0;

    // Chained only.
    std::shared_ptr<const TargetSpec> inner;
    double standoff = 0.0;
    double gain = 0.0;
    double u_max = 0.0;
    double dt = 0.0;

    /// Largest speed the target can ever reach, used to check that the
    /// swarm's saturation limit leaves headroom for tracking.
    double max_speed() const;

    /// Throws ValidationError on nonsensical parameters (recurses into
    /// chained inner specs).
    void validate() const;
};

/// Samples target state at arbitrary times. Sampling never needs to be
/// monotone in t: chained targets memoize their command grid.
class TargetModel {
  public:
    virtual ~TargetModel() = default;
    virtual TargetState sample(double t) = 0;
};

std::unique_ptr<TargetModel> make_target(const TargetSpec& spec);

}  // namespace formtrack
