#include "formtrack/target.hpp"

#include <cmath>
#include <vector>

#include "formtrack/control.hpp"
#include "formtrack/errors.hpp"

namespace formtrack {

double TargetSpec::max_speed() const {
    switch (kind) {
        case TargetKind::Stationary: return 0.0;
        case TargetKind::Linear: return velocity.norm();
        case TargetKind::Circular: return radius * std::abs(angular_rate);
        case TargetKind::Chained: return u_max;
    }
    return 0.0;
}

void TargetSpec::validate() const {
    switch (kind) {
        case TargetKind::Stationary:
        case TargetKind::Linear:
            return;
        case TargetKind::Circular:
            if (!(radius > 0.0)) throw ValidationError("circular target needs radius > 0");
            return;
        case TargetKind::Chained:
            if (!inner) throw ValidationError("chained target needs an inner target");
            if (!(standoff > 0.0)) throw ValidationError("chained target needs standoff > 0");
            if (!(gain > 0.0)) throw ValidationError("chained target needs gain > 0");
            if (!(u_max > 0.0)) throw ValidationError("chained target needs u_max > 0");
            if (!(dt > 0.0)) throw ValidationError("chained target needs dt > 0");
            inner->validate();
            return;
    }
}

namespace {

class StationaryModel final : public TargetModel {
  public:
    explicit StationaryModel(Vec2 p) : p_(p) {}
    TargetState sample(double) override { return {p_, {0.0, 0.0}}; }

  private:
    Vec2 p_;
};

class LinearModel final : public TargetModel {
  public:
    LinearModel(Vec2 p, Vec2 v) : p_(p), v_(v) {}
    TargetState sample(double t) override { return {p_ + t * v_, v_}; }

  private:
    Vec2 p_, v_;
};

class CircularModel final : public TargetModel {
  public:
    explicit CircularModel(const TargetSpec& s)
        : c_(s.center), r_(s.radius), w_(s.angular_rate), phi_(s.phase) {}

    TargetState sample(double t) override {
        const double a = w_ * t + phi_;
        const Vec2 pos = c_ + Vec2{r_ * std::cos(a), r_ * std::sin(a)};
        const Vec2 vel{-r_ * w_ * std::sin(a), r_ * w_ * std::cos(a)};
        return {pos, vel};
    }

  private:
    Vec2 c_;
    double r_, w_, phi_;
};

// Pursues the inner target with a standoff law, recomputing its command at
// multiples of its own dt and holding it in between. The grid of (position,
// command) pairs is extended lazily so queries may arrive in any order.
class ChainedModel final : public TargetModel {
  public:
    explicit ChainedModel(const TargetSpec& s)
        : inner_(make_target(*s.inner)),
          standoff_(s.standoff),
          gain_(s.gain),
          sat_{s.u_max},
          dt_(s.dt) {
        positions_.push_back(s.position);
    }

    TargetState sample(double t) override {
        if (t < 0.0) t = 0.0;
        const auto idx = static_cast<std::size_t>(std::floor(t / dt_));
        extend_to(idx);
        return {positions_[idx] + (t - static_cast<double>(idx) * dt_) * commands_[idx],
                commands_[idx]};
    }

  private:
    void extend_to(std::size_t idx) {
        while (commands_.size() <= idx) {
            const std::size_t i = commands_.size();
            const double t = static_cast<double>(i) * dt_;
            const TargetState lead = inner_->sample(t);
            const RelVec rel = positions_[i] - lead.position;
            const Vec2 raw = lead.velocity - gain_ * target_gradient(rel, standoff_);
            commands_.push_back(saturate(raw, sat_));
            positions_.push_back(positions_[i] + dt_ * commands_[i]);
        }
    }

    std::unique_ptr<TargetModel> inner_;
    double standoff_;
    double gain_;
    SaturationSpec sat_;
    double dt_;
    std::vector<Vec2> positions_;  // positions_[i] at time i*dt_
    std::vector<Vec2> commands_;   // held over [i*dt_, (i+1)*dt_)
};

}  // namespace

std::unique_ptr<TargetModel> make_target(const TargetSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case TargetKind::Stationary: return std::make_unique<StationaryModel>(spec.position);
        case TargetKind::Linear: return std::make_unique<LinearModel>(spec.position, spec.velocity);
        case TargetKind::Circular: return std::make_unique<CircularModel>(spec);
        case TargetKind::Chained: return std::make_unique<ChainedModel>(spec);
    }
    throw ValidationError("unknown target kind");
}

}  // namespace formtrack
