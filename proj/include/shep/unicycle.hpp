#pragma once

#include "shep/geometry.hpp"

namespace shep {

/// Differential-drive realization parameters.
struct UnicycleParams {
    double lookahead;    ///< mapping look-ahead distance d, m
    double wheelbase;    ///< axle length l, m
    double wheel_v_max;  ///< per-wheel speed limit, m/s
    double epsilon;      ///< division guard in the wheel scaling
};

/// Planar pose; heading wrapped to (-pi, pi].
struct Pose {
    Vec2 position;
    double heading{0.0};
};

/// Linear/angular velocity pair.
struct VelocityCommand {
    double v{0.0};
    double omega{0.0};
};

double wrap_angle(double a);

/// Look-ahead-point mapping from a planar velocity to (v, omega).
VelocityCommand map_to_unicycle(Vec2 u, const Pose& pose, const UnicycleParams& up);

/// Inverse of map_to_unicycle (used by tests and diagnostics).
Vec2 unicycle_to_planar(VelocityCommand cmd, const Pose& pose, const UnicycleParams& up);

/// Uniformly rescale (v, omega) so both wheel speeds |v +- l/2 w| stay within
/// wheel_v_max; the command direction is preserved.
VelocityCommand scale_wheels(VelocityCommand nominal, const UnicycleParams& up);

/// Wheel speeds implied by a command.
double left_wheel_speed(VelocityCommand cmd, const UnicycleParams& up);
double right_wheel_speed(VelocityCommand cmd, const UnicycleParams& up);

/// Forward-Euler unicycle plant update.
Pose step_unicycle(const Pose& pose, VelocityCommand cmd, double dt);

} // namespace shep
