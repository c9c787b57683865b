#include "shep/unicycle.hpp"

#include <algorithm>
#include <cmath>

namespace shep {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
} // namespace

double wrap_angle(double a) {
    double y = std::fmod(a + kPi, kTwoPi);
    if (y <= 0.0) y += kTwoPi;
    return y - kPi;  // (-pi, pi]
}

VelocityCommand map_to_unicycle(Vec2 u, const Pose& pose, const UnicycleParams& up) {
    double c = std::cos(pose.heading);
    double s = std::sin(pose.heading);
    return {c * u.x + s * u.y, (-s * u.x + c * u.y) / up.lookahead};
}

Vec2 unicycle_to_planar(VelocityCommand cmd, const Pose& pose, const UnicycleParams& up) {
    double c = std::cos(pose.heading);
    double s = std::sin(pose.heading);
    double lateral = cmd.omega * up.lookahead;
    return {c * cmd.v - s * lateral, s * cmd.v + c * lateral};
}

double left_wheel_speed(VelocityCommand cmd, const UnicycleParams& up) {
    return cmd.v - 0.5 * up.wheelbase * cmd.omega;
}

double right_wheel_speed(VelocityCommand cmd, const UnicycleParams& up) {
    return cmd.v + 0.5 * up.wheelbase * cmd.omega;
}

VelocityCommand scale_wheels(VelocityCommand nominal, const UnicycleParams& up) {
    double plus = std::abs(right_wheel_speed(nominal, up)) + up.epsilon;
    double minus = std::abs(left_wheel_speed(nominal, up)) + up.epsilon;
    double s = std::min({1.0, up.wheel_v_max / plus, up.wheel_v_max / minus});
    return {s * nominal.v, s * nominal.omega};
}

Pose step_unicycle(const Pose& pose, VelocityCommand cmd, double dt) {
    Pose next;
    next.position = pose.position +
                    Vec2{std::cos(pose.heading), std::sin(pose.heading)} * (cmd.v * dt);
    next.heading = wrap_angle(pose.heading + cmd.omega * dt);
    return next;
}

} // namespace shep
