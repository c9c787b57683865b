#include "shep/control.hpp"

#include <cmath>
#include <limits>

namespace shep {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
} // namespace

std::vector<std::optional<std::size_t>> select_targets(std::span<const Vec2> herders,
                                                       std::span<const TargetState> targets,
                                                       double rho_g, Vec2 goal_center) {
    const std::size_t n = herders.size();
    std::vector<std::optional<std::size_t>> selection(n);
    if (n == 0) return selection;

    // Nearest herder per target; smallest herder index wins exact ties.
    std::vector<std::size_t> owner(targets.size());
    for (std::size_t a = 0; a < targets.size(); ++a) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double d = (herders[i] - targets[a].position).norm();
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        owner[a] = best;
    }
    // Farthest uncaptured owned target; smallest target index wins ties.
    for (std::size_t a = 0; a < targets.size(); ++a) {
        double radius = (targets[a].position - goal_center).norm();
        if (radius <= rho_g) continue;  // already inside the goal region
        std::size_t i = owner[a];
        if (!selection[i] ||
            radius > (targets[*selection[i]].position - goal_center).norm()) {
            selection[i] = a;
        }
    }
    return selection;
}

Vec2 return_to_goal(Vec2 h, const HerderParams& params, Vec2 goal_center) {
    Vec2 r = h - goal_center;
    double d = r.norm();
    if (d <= params.rho_g) return {0.0, 0.0};
    return (r / d) * -params.v_h;
}

Vec2 herder_obstacle_force(Vec2 h, Vec2 steering_point, std::span<const ObstacleField> fields,
                           double gamma, bool* clamped) {
    Vec2 total{0.0, 0.0};
    for (const ObstacleField& f : fields) {
        Vec2 normal = obstacle_force(f, h, clamped);
        if (normal.norm_sq() == 0.0) continue;
        Vec2 p = f.obstacle.centroid();
        // +pi/2 when the steering point lies clockwise of the herder as seen
        // from the obstacle centroid, -pi/2 otherwise (zero included).
        double side = cross_z(h - p, steering_point - p);
        Vec2 tangential = side > 0.0 ? rot90ccw(normal) : rot90cw(normal);
        total += normal * gamma + tangential * (1.0 - gamma);
    }
    return total;
}

std::optional<std::size_t> nearest_obstacle(Vec2 q, std::span<const ObstacleField> fields) {
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < fields.size(); ++j) {
        double d = fields[j].obstacle.project_ex(q).distance;
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

Vec2 boundary_tangent(Vec2 target, const ConvexPolygon& obstacle, Vec2 goal_center) {
    Vec2 s = separation_vector(target, obstacle);
    Vec2 p = obstacle.centroid();
    double side = cross_z(target - p, goal_center - p);
    Vec2 nu = side > 0.0 ? rot90cw(s) : rot90ccw(s);
    return nu.normalized();
}

int mu_switch(Vec2 target, std::span<const ObstacleField> fields, Vec2 goal_center,
              double epsilon_o) {
    auto j = nearest_obstacle(target, fields);
    if (!j) return 1;
    const ObstacleField& f = fields[*j];
    double standoff = f.obstacle.project_ex(target).distance;
    if (f.obstacle.strictly_inside(target) || standoff > f.lambda_o + epsilon_o) return 1;
    // Blocking test: the straight segment to the goal meets the obstacle
    // inflated by epsilon_o.
    bool blocked = segment_polygon_distance(target, goal_center, f.obstacle) <= epsilon_o;
    return blocked ? 0 : 1;
}

Vec2 steering_term(Vec2 h, Vec2 target, int mu, Vec2 nu_hat, const HerderParams& params,
                   Vec2 goal_center, Vec2* steering_point) {
    Vec2 offset;
    if (mu == 1) {
        Vec2 radial = target - goal_center;
        if (radial.norm_sq() == 0.0) {
            throw DegenerateDirection("target coincides with the goal center");
        }
        offset = radial.normalized() * params.delta;
    } else {
        offset = nu_hat * params.delta;
    }
    Vec2 c = target + offset;
    if (steering_point) *steering_point = c;
    return (h - c) * -params.alpha;
}

OrbitWeights orbit_weights(Vec2 h, Vec2 target, Vec2 steering_point,
                           std::span<const ObstacleField> fields, const OrbitParams& op,
                           double epsilon_o) {
    OrbitWeights w{0.0, 0.0, 1, 0.0};
    Vec2 d_ht = h - target;
    Vec2 d_ct = steering_point - target;

    w.phi = cross_z(d_ht, d_ct) >= 0.0 ? kHalfPi : -kHalfPi;

    // psi = -1 when the herder is on the far side of the target from the
    // steering point (angle > pi/2) while also on the obstacle side
    // (angle to -s below pi/2); both tests reduce to dot-product signs.
    auto j = nearest_obstacle(target, fields);
    if (j) {
        const ObstacleField& f = fields[*j];
        BoundaryProjection proj = f.obstacle.project_ex(target);
        if (!f.obstacle.strictly_inside(target) &&
            proj.distance <= f.lambda_o + epsilon_o) {
            Vec2 toward_obstacle = proj.point - target;  // -s
            if (d_ht.dot(d_ct) < 0.0 && toward_obstacle.dot(d_ht) > 0.0) w.psi = -1;
        }
    }

    double dist = d_ht.norm();
    if (dist <= op.r_th) {
        w.sigma = 1.0;
    } else if (dist >= op.r_th + op.epsilon_h) {
        w.sigma = 0.0;
    } else {
        w.sigma = (op.r_th + op.epsilon_h - dist) / op.epsilon_h;
    }

    double beta = std::atan2(std::abs(cross_z(d_ht, d_ct)), d_ht.dot(d_ct));
    if (beta <= op.beta_orb) {
        w.zeta = 0.0;
    } else if (beta >= op.beta_th) {
        w.zeta = 1.0;
    } else {
        w.zeta = (beta - op.beta_orb) / (op.beta_th - op.beta_orb);
    }
    return w;
}

Vec2 orbit_velocity(Vec2 h, Vec2 target, const OrbitWeights& w, const OrbitParams& op) {
    Vec2 d = h - target;
    double dist = d.norm();
    if (dist == 0.0) {
        throw DegenerateDirection("herder coincides with its selected target");
    }
    Vec2 d_hat = d / dist;
    Vec2 tangential =
        (w.psi * w.phi > 0.0 ? rot90ccw(d_hat) : rot90cw(d_hat)) * op.alpha_o;
    Vec2 radial = d_hat * (op.alpha_r * (1.0 - dist / op.r_th));
    return tangential + radial;
}

Vec2 saturate(Vec2 u, double v_max, bool* saturated) {
    double n = u.norm();
    if (n <= v_max) return u;
    if (saturated) *saturated = true;
    return u * (v_max / n);
}

namespace {

/// Shared steering/targeting stage; fills everything except the command.
HerderDecision decide(std::size_t i, const ControlContext& ctx,
                      std::optional<std::size_t> selection, Vec2* steering_velocity) {
    HerderDecision d;
    d.steering_point = ctx.goal_center;
    *steering_velocity = {0.0, 0.0};
    if (!selection) return d;

    d.eta = true;
    d.selected_target = selection;
    Vec2 h = ctx.herders[i];
    Vec2 t = ctx.targets[*selection].position;

    d.mu = mu_switch(t, ctx.fields, ctx.goal_center, ctx.herder.epsilon_o);
    Vec2 nu_hat{0.0, 0.0};
    if (d.mu == 0) {
        auto j = nearest_obstacle(t, ctx.fields);
        nu_hat = boundary_tangent(t, ctx.fields[*j].obstacle, ctx.goal_center);
    }
    *steering_velocity =
        steering_term(h, t, d.mu, nu_hat, ctx.herder, ctx.goal_center, &d.steering_point);
    return d;
}

} // namespace

HerderDecision compose_ideal(std::size_t i, const ControlContext& ctx,
                             std::optional<std::size_t> selection) {
    Vec2 steering;
    HerderDecision d = decide(i, ctx, selection, &steering);
    Vec2 h = ctx.herders[i];

    Vec2 u = d.eta ? steering : return_to_goal(h, ctx.herder, ctx.goal_center);
    u += herder_obstacle_force(h, d.steering_point, ctx.fields, ctx.herder.gamma,
                               &d.singular_clamp);
    d.command = saturate(u, ctx.herder.v_h, &d.saturated);
    return d;
}

HerderDecision compose_embodied(std::size_t i, const ControlContext& ctx,
                                std::optional<std::size_t> selection) {
    Vec2 steering;
    HerderDecision d = decide(i, ctx, selection, &steering);
    Vec2 h = ctx.herders[i];

    Vec2 u{0.0, 0.0};
    if (d.eta) {
        Vec2 t = ctx.targets[*selection].position;
        OrbitWeights w =
            orbit_weights(h, t, d.steering_point, ctx.fields, ctx.orbit, ctx.herder.epsilon_o);
        d.sigma = w.sigma;
        d.zeta = w.zeta;
        d.psi = w.psi;
        d.phi = w.phi;
        u = steering * (1.0 - d.sigma);
        if (d.sigma * d.zeta > 0.0) {
            u += orbit_velocity(h, t, w, ctx.orbit) * (d.sigma * d.zeta);
        }
    } else {
        u = return_to_goal(h, ctx.herder, ctx.goal_center);
    }
    u += herder_obstacle_force(h, d.steering_point, ctx.fields, ctx.herder.gamma,
                               &d.singular_clamp);
    for (std::size_t j = 0; j < ctx.herders.size(); ++j) {
        if (j == i) continue;
        u += pair_force(ctx.herder_pair, h, ctx.herders[j], &d.singular_clamp);
    }
    d.command = saturate(u, ctx.herder.v_h, &d.saturated);
    return d;
}

} // namespace shep
