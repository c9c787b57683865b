#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "shep/geometry.hpp"
#include "shep/potential.hpp"
#include "shep/targets.hpp"

namespace shep {

/// Herder control gains and geometry.
struct HerderParams {
    double v_h;        ///< maximum speed, m/s
    double alpha;      ///< attraction gain toward the steering point
    double delta;      ///< steering-point offset behind the target, m (< lambda)
    double gamma;      ///< normal/tangential obstacle-force blend in [0,1]
    double rho_g;      ///< goal region radius, m
    double epsilon_o;  ///< obstacle safety margin, m
};

/// Orbiting behavior parameters (embodied control law).
struct OrbitParams {
    double alpha_o;    ///< tangential gain
    double alpha_r;    ///< radial gain regulating herder-target distance to r_th
    double r_th;       ///< orbit radius threshold, m
    double epsilon_h;  ///< distance-blend buffer, m
    double beta_orb;   ///< angle deadband, rad
    double beta_th;    ///< angle saturation, rad (> beta_orb)
};

/// Everything one herder decided in one step, kept for traces and tests.
struct HerderDecision {
    bool eta{false};                            ///< chasing a target
    std::optional<std::size_t> selected_target; ///< index into the target list
    int mu{1};                                  ///< 1 straight push, 0 tangential push
    Vec2 steering_point{};                      ///< C; goal center when idle
    double sigma{0.0};                          ///< orbit distance blend in [0,1]
    double zeta{0.0};                           ///< orbit angle blend in [0,1]
    int psi{1};                                 ///< orbit direction sign (+1/-1)
    double phi{0.0};                            ///< nominal orbit rotation (+-pi/2)
    Vec2 command{};                             ///< saturated velocity command
    bool saturated{false};
    bool singular_clamp{false};
};

/// Shared per-step inputs for command composition.
struct ControlContext {
    std::span<const Vec2> herders;
    std::span<const TargetState> targets;
    std::span<const ObstacleField> fields;
    HerderParams herder;
    OrbitParams orbit;           // embodied only
    PairRepulsion herder_pair;   // embodied only
    Vec2 goal_center{0.0, 0.0};
};

/// Each herder picks the farthest-from-goal uncaptured target among those
/// whose nearest herder it is.  Ties (equidistant herders, equal radii) go to
/// the smallest index, so no target is ever claimed twice.
std::vector<std::optional<std::size_t>> select_targets(std::span<const Vec2> herders,
                                                       std::span<const TargetState> targets,
                                                       double rho_g,
                                                       Vec2 goal_center = {0.0, 0.0});

/// Idle behavior: head for the goal center at constant speed v_h until inside
/// the goal disc, then stop.
Vec2 return_to_goal(Vec2 h, const HerderParams& params, Vec2 goal_center = {0.0, 0.0});

/// Hybrid obstacle avoidance: gamma blends plain repulsion with its +-pi/2
/// rotation, the rotation side chosen from the herder/steering-point geometry
/// so the herder slides around the obstacle instead of stalling on it.
Vec2 herder_obstacle_force(Vec2 h, Vec2 steering_point, std::span<const ObstacleField> fields,
                           double gamma, bool* clamped = nullptr);

/// Index of the obstacle whose boundary is closest to q (ties: smallest index).
std::optional<std::size_t> nearest_obstacle(Vec2 q, std::span<const ObstacleField> fields);

/// Unit tangent along the obstacle boundary at the target, oriented so that
/// pushing the target against it sweeps the target toward the goal side.
Vec2 boundary_tangent(Vec2 target, const ConvexPolygon& obstacle, Vec2 goal_center);

/// mu = 0 when the nearest obstacle is within lambda_o + epsilon_o of the
/// target and blocks its straight segment to the goal; 1 otherwise.
int mu_switch(Vec2 target, std::span<const ObstacleField> fields, Vec2 goal_center,
              double epsilon_o);

/// Steering velocity -alpha (h - C) toward the offset point
/// C = T + delta * (mu * T_hat + (1 - mu) * nu_hat); C is returned through
/// `steering_point` for the downstream rotation-side decisions.
Vec2 steering_term(Vec2 h, Vec2 target, int mu, Vec2 nu_hat, const HerderParams& params,
                   Vec2 goal_center, Vec2* steering_point);

struct OrbitWeights {
    double sigma;
    double zeta;
    int psi;
    double phi;
};

/// Distance ramp sigma, angle ramp zeta, and the orbit rotation signs.
OrbitWeights orbit_weights(Vec2 h, Vec2 target, Vec2 steering_point,
                           std::span<const ObstacleField> fields, const OrbitParams& op,
                           double epsilon_o);

/// Orbiting velocity: tangential circulation plus radial regulation to r_th.
/// Throws DegenerateDirection when the herder sits exactly on the target.
Vec2 orbit_velocity(Vec2 h, Vec2 target, const OrbitWeights& w, const OrbitParams& op);

/// Rescale u to norm v_max when it exceeds it (direction preserving).
Vec2 saturate(Vec2 u, double v_max, bool* saturated = nullptr);

/// Single-integrator control law (simulation-scale model).
HerderDecision compose_ideal(std::size_t i, const ControlContext& ctx,
                             std::optional<std::size_t> selection);

/// Embodied control law: steering blended out by sigma, orbiting blended in
/// by sigma*zeta, plus herder-herder repulsion.
HerderDecision compose_embodied(std::size_t i, const ControlContext& ctx,
                                std::optional<std::size_t> selection);

} // namespace shep
