#include <doctest.h>

#include <cmath>
#include <random>

#include "shep/unicycle.hpp"

using namespace shep;

namespace {
constexpr double kPi = 3.141592653589793;
UnicycleParams robot() { return {0.1, 0.233, 0.31, 1e-9}; }
} // namespace

TEST_SUITE("unicycle") {

TEST_CASE("velocity mapping") {
    UnicycleParams up = robot();
    Pose pose{{0.0, 0.0}, 0.0};
    auto aligned = map_to_unicycle({1.0, 0.0}, pose, up);
    CHECK(aligned.v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(aligned.omega == doctest::Approx(0.0).epsilon(1e-12));

    auto lateral = map_to_unicycle({0.0, 1.0}, pose, up);
    CHECK(lateral.v == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lateral.omega == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("mapping is invertible and linear") {
    UnicycleParams up = robot();
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> a(-kPi, kPi);
    for (int i = 0; i < 200; ++i) {
        Pose pose{{u(rng), u(rng)}, a(rng)};
        Vec2 cmd{u(rng), u(rng)};
        auto vw = map_to_unicycle(cmd, pose, up);
        Vec2 back = unicycle_to_planar(vw, pose, up);
        CHECK((back - cmd).norm() < 1e-12 * (1.0 + cmd.norm()));

        // linearity
        Vec2 cmd2{u(rng), u(rng)};
        auto vw2 = map_to_unicycle(cmd2, pose, up);
        auto vw_sum = map_to_unicycle(cmd + cmd2, pose, up);
        CHECK(vw_sum.v == doctest::Approx(vw.v + vw2.v).epsilon(1e-12));
        CHECK(vw_sum.omega == doctest::Approx(vw.omega + vw2.omega).epsilon(1e-12));
    }
}

TEST_CASE("wheel scaling") {
    UnicycleParams up = robot();
    SUBCASE("within limits nothing changes") {
        VelocityCommand c{0.1, 0.2};
        auto s = scale_wheels(c, up);
        CHECK(s.v == c.v);
        CHECK(s.omega == c.omega);
    }
    SUBCASE("pure translation clamps to the wheel limit") {
        UnicycleParams up2{0.1, 0.233, 0.5, 1e-9};
        auto s = scale_wheels({1.0, 0.0}, up2);
        CHECK(s.v == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(s.omega == 0.0);
    }
    SUBCASE("hand value for a mixed command") {
        UnicycleParams up2{0.1, 0.23, 0.5, 1e-9};
        auto s = scale_wheels({0.3, 4.0}, up2);
        double expect = 0.5 / (0.3 + 0.5 * 0.23 * 4.0);  // 0.6579...
        CHECK(s.v == doctest::Approx(0.3 * expect).epsilon(1e-6));
        CHECK(s.omega == doctest::Approx(4.0 * expect).epsilon(1e-6));
        CHECK(std::abs(left_wheel_speed(s, up2)) <= 0.5);
        CHECK(std::abs(right_wheel_speed(s, up2)) <= 0.5);
    }
    SUBCASE("scaling is a positive shrink that respects both wheels") {
        std::mt19937 rng(83);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int i = 0; i < 500; ++i) {
            VelocityCommand c{u(rng), 4.0 * u(rng)};
            auto s = scale_wheels(c, up);
            CHECK(std::abs(left_wheel_speed(s, up)) <= up.wheel_v_max);
            CHECK(std::abs(right_wheel_speed(s, up)) <= up.wheel_v_max);
            CHECK(std::abs(s.v) <= std::abs(c.v) + 1e-15);
            CHECK(std::abs(s.omega) <= std::abs(c.omega) + 1e-15);
            if (c.v != 0.0) {
                double ratio = s.v / c.v;
                CHECK(ratio > 0.0);
                CHECK(ratio <= 1.0);
                if (c.omega != 0.0) {
                    CHECK(s.omega / c.omega == doctest::Approx(ratio).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("plant stepping") {
    SUBCASE("no linear speed keeps the position") {
        Pose p{{1.0, 2.0}, 0.7};
        Pose next = step_unicycle(p, {0.0, 1.0}, 0.1);
        CHECK(next.position.x == 1.0);
        CHECK(next.position.y == 2.0);
        CHECK(next.heading == doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("straight drive advances along the heading") {
        Pose p{{0.0, 0.0}, 0.0};
        Pose next = step_unicycle(p, {1.0, 0.0}, 0.1);
        CHECK(next.position.x == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(next.position.y == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("euler circle closes within tolerance") {
        Pose p{{0.0, 0.0}, 0.0};
        const double dt = 0.002;
        const int steps = static_cast<int>(std::llround(2.0 * kPi / dt));
        Pose q = p;
        for (int i = 0; i < steps; ++i) q = step_unicycle(q, {1.0, 1.0}, dt);
        CHECK((q.position - p.position).norm() < 0.02);
    }
    SUBCASE("heading stays wrapped") {
        Pose p{{0.0, 0.0}, 3.0};
        for (int i = 0; i < 100; ++i) {
            p = step_unicycle(p, {0.0, 5.0}, 0.1);
            CHECK(p.heading <= kPi);
            CHECK(p.heading > -kPi);
        }
        CHECK(wrap_angle(kPi) == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(wrap_angle(-kPi) == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-9));
    }
}

} // TEST_SUITE
