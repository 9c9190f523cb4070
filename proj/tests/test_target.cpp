#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "formtrack/errors.hpp"
#include "formtrack/target.hpp"

using namespace formtrack;

TEST_CASE("stationary target never moves") {
    TargetSpec spec;
    spec.kind = TargetKind::Stationary;
    spec.position = {3.0, -1.5};
    spec.validate();
    CHECK(spec.max_speed() == 0.0);

    auto model = make_target(spec);
    for (double t : {0.0, 0.5, 100.0}) {
        const TargetState s = model->sample(t);
        CHECK(s.position == Vec2{3.0, -1.5});
        CHECK(s.velocity == Vec2{0.0, 0.0});
    }
}

TEST_CASE("linear target follows position + velocity * t") {
    TargetSpec spec;
    spec.kind = TargetKind::Linear;
    spec.position = {1.0, 2.0};
    spec.velocity = {0.2, -0.4};
    spec.validate();
    CHECK(spec.max_speed() == doctest::Approx(std::sqrt(0.2)).epsilon(1e-15));

    auto model = make_target(spec);
    const TargetState s = model->sample(2.5);
    CHECK(s.position.x == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.position.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.velocity == Vec2{0.2, -0.4});
}

TEST_CASE("circular target parameterization") {
    TargetSpec spec;
    spec.kind = TargetKind::Circular;
    spec.center = {1.0, 2.0};
    spec.radius = 3.0;
    spec.angular_rate = 0.5;
    spec.phase = 0.0;
    spec.validate();
    CHECK(spec.max_speed() == doctest::Approx(1.5).epsilon(1e-15));

    auto model = make_target(spec);
    TargetState s = model->sample(0.0);
    CHECK(s.position.x == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(s.position.y == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.velocity.x == doctest::Approx(0.0).scale(1.5));
    CHECK(s.velocity.y == doctest::Approx(1.5).epsilon(1e-15));

    // Quarter turn later the tangent has rotated with the radius.
    const double quarter = 0.5 * std::numbers::pi_v<double> / 0.5;
    s = model->sample(quarter);
    CHECK(s.position.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.position.y == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(s.velocity.x == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(s.velocity.y == doctest::Approx(0.0).scale(1.5));

    // Speed is constant on the circle.
    for (double t : {0.3, 1.7, 9.2}) {
        CHECK(model->sample(t).velocity.norm() == doctest::Approx(1.5).epsilon(1e-12));
    }
}

TEST_CASE("chained target holds commands over its grid") {
    auto inner = std::make_shared<TargetSpec>();
    inner->kind = TargetKind::Stationary;
    inner->position = {0.0, 0.0};

    TargetSpec spec;
    spec.kind = TargetKind::Chained;
    spec.position = {10.0, 0.0};
    spec.inner = inner;
    spec.standoff = 2.0;
    spec.gain = 0.5;
    spec.u_max = 1.0;
    spec.dt = 0.01;
    spec.validate();
    CHECK(spec.max_speed() == 1.0);

    auto model = make_target(spec);

    // Within one grid cell the motion is linear in the held command.
    const TargetState at3 = model->sample(0.03);
    const TargetState mid = model->sample(0.035);
    CHECK(mid.velocity == at3.velocity);
    CHECK(mid.position.x == doctest::Approx(at3.position.x + 0.005 * at3.velocity.x).epsilon(1e-14));
    CHECK(mid.position.y == doctest::Approx(at3.position.y + 0.005 * at3.velocity.y).epsilon(1e-14));

    // Saturation caps the pursuit speed.
    for (double t : {0.0, 0.5, 2.0}) {
        CHECK(model->sample(t).velocity.norm() <= 1.0 + 1e-12);
    }

    // Pursuer closes toward the standoff ring around the stationary lead.
    const double d0 = model->sample(0.0).position.norm();
    const double d1 = model->sample(20.0).position.norm();
    CHECK(d1 < d0);
    CHECK(d1 == doctest::Approx(2.0).epsilon(0.05));

    // Sampling is memoized and order-independent.
    const TargetState once = model->sample(5.0);
    (void)model->sample(1.25);
    const TargetState again = model->sample(5.0);
    CHECK(once.position == again.position);
    CHECK(once.velocity == again.velocity);

    // Negative times clamp to the start.
    CHECK(model->sample(-3.0).position == Vec2{10.0, 0.0});
}

TEST_CASE("target validation rejects nonsense") {
    TargetSpec circ;
    circ.kind = TargetKind::Circular;
    circ.radius = -1.0;
    circ.angular_rate = 0.5;
    CHECK_THROWS_AS(circ.validate(), ValidationError);

    TargetSpec chain;
    chain.kind = TargetKind::Chained;
    chain.standoff = 2.0;
    chain.gain = 0.5;
    chain.u_max = 0.0;  // pursuer must be able to move
    chain.dt = 0.01;
    chain.inner = std::make_shared<TargetSpec>();
    CHECK_THROWS_AS(chain.validate(), ValidationError);

    chain.u_max = 1.0;
    chain.dt = 0.0;
    CHECK_THROWS_AS(chain.validate(), ValidationError);

    chain.dt = 0.01;
    chain.inner = nullptr;
    CHECK_THROWS_AS(chain.validate(), ValidationError);
}
