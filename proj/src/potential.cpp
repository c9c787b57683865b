#include "shep/potential.hpp"

namespace shep {

namespace {

double force_magnitude(double dist, double cutoff, double gain) {
    return gain * (1.0 / dist - 1.0 / cutoff) / (dist * dist);
}

} // namespace

double potential(const ObstacleField& field, Vec2 q) {
    Vec2 s = separation_vector(q, field.obstacle);
    double n = s.norm();
    if (n > field.lambda_o) return 0.0;
    double inv = 1.0 / n - 1.0 / field.lambda_o;
    return 0.5 * field.k_o * inv * inv;
}

Vec2 obstacle_force(const ObstacleField& field, Vec2 q, bool* clamped) {
    BoundaryProjection proj = field.obstacle.project_ex(q);
    if (field.obstacle.strictly_inside(q)) {
        throw InsideObstacle("force query strictly inside an obstacle");
    }
    double n = proj.distance;
    if (n > field.lambda_o) return {0.0, 0.0};
    if (n < kMinSeparation) {
        if (clamped) *clamped = true;
        // Direction from the boundary; for on-boundary points the separation
        // vector vanishes, so fall back to the edge normal.
        Vec2 dir = (q - proj.point).normalized();
        if (dir.norm_sq() == 0.0) dir = field.obstacle.edge_outward_normal(proj.edge);
        return dir * force_magnitude(kMinSeparation, field.lambda_o, field.k_o);
    }
    Vec2 s_hat = (q - proj.point) / n;
    return s_hat * force_magnitude(n, field.lambda_o, field.k_o);
}

Vec2 pair_force(const PairRepulsion& rep, Vec2 qi, Vec2 qj, bool* clamped) {
    Vec2 d = qi - qj;
    double n = d.norm();
    if (n > rep.d_th) return {0.0, 0.0};
    if (n < kMinSeparation) {
        if (clamped) *clamped = true;
        if (n == 0.0) return {0.0, 0.0};  // coincident agents: no defined direction
        return (d / n) * force_magnitude(kMinSeparation, rep.d_th, rep.k_d);
    }
    return (d / n) * force_magnitude(n, rep.d_th, rep.k_d);
}

} // namespace shep
