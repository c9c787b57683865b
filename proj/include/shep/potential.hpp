#pragma once

#include "shep/geometry.hpp"

namespace shep {

/// Separation band below which the 1/|s|^2 force laws are clamped.  Explicit
/// integration cannot survive the divergence and the dynamics never reach the
/// boundary legitimately; crossings are logged as singular-proximity events.
inline constexpr double kMinSeparation = 1e-3;  // meters

/**
 * Repulsive potential field around one obstacle.
 *
 * U(q) = k_o/2 * (1/|s| - 1/lambda_o)^2 for |s| <= lambda_o, 0 outside,
 * where s is the separation vector from the obstacle boundary to q.
 * Compact support: both the potential and its gradient are exactly zero
 * beyond the influence radius.
 */
struct ObstacleField {
    ConvexPolygon obstacle;
    double lambda_o;  ///< influence radius, m
    double k_o;       ///< repulsion gain
};

/// Field energy at q. Throws InsideObstacle for interior points.
double potential(const ObstacleField& field, Vec2 q);

/// -grad U(q): radially outward along the separation vector, zero beyond
/// lambda_o.  Inside the singular band the magnitude is clamped to its value
/// at kMinSeparation; `clamped`, when non-null, reports that this happened.
Vec2 obstacle_force(const ObstacleField& field, Vec2 q, bool* clamped = nullptr);

/// Same-type inter-agent repulsion with cutoff d_th (embodied model).
struct PairRepulsion {
    double k_d;   ///< gain
    double d_th;  ///< cutoff distance, m
};

/// Force on the agent at qi from the agent at qj; antisymmetric in the pair,
/// exactly zero beyond d_th, clamped inside the singular band.
Vec2 pair_force(const PairRepulsion& rep, Vec2 qi, Vec2 qj, bool* clamped = nullptr);

} // namespace shep
