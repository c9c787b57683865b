#include "shep/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "shep/control.hpp"

namespace shep {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
} // namespace

std::pair<int, int> OccupancyGrid::cell_of(Vec2 p) const {
    int ix = static_cast<int>(std::floor((p.x - origin.x) / resolution));
    int iy = static_cast<int>(std::floor((p.y - origin.y) / resolution));
    return {ix, iy};
}

std::optional<std::pair<int, int>> OccupancyGrid::nearest_free_cell(Vec2 p) const {
    auto [cx, cy] = cell_of(p);
    cx = std::clamp(cx, 0, nx - 1);
    cy = std::clamp(cy, 0, ny - 1);
    int max_r = std::max(nx, ny);
    for (int r = 0; r <= max_r; ++r) {
        std::optional<std::pair<int, int>> best;
        double best_d = std::numeric_limits<double>::infinity();
        for (int iy = cy - r; iy <= cy + r; ++iy) {
            for (int ix = cx - r; ix <= cx + r; ++ix) {
                if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != r) continue;
                if (!in_bounds(ix, iy) || occupied(ix, iy)) continue;
                double d = (cell_center(ix, iy) - p).norm_sq();
                if (d < best_d) {
                    best_d = d;
                    best = {{ix, iy}};
                }
            }
        }
        if (best) return best;
    }
    return std::nullopt;
}

OccupancyGrid rasterize(std::span<const ConvexPolygon> obstacles, Vec2 lo, Vec2 hi,
                        double resolution, double inflation) {
    OccupancyGrid g;
    g.origin = lo;
    g.resolution = resolution;
    g.nx = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / resolution)));
    g.ny = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / resolution)));
    g.cells.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            Vec2 c = g.cell_center(ix, iy);
            for (const ConvexPolygon& poly : obstacles) {
                bool inside = poly.contains(c) || poly.project_ex(c).distance <= inflation;
                if (inside) {
                    g.cells[static_cast<std::size_t>(iy) * g.nx + ix] = 1;
                    break;
                }
            }
        }
    }
    return g;
}

namespace {

struct NodeCost {
    int straight{0};
    int diagonal{0};
};

// Path length recomputed from whole-move counts each time, so equal move
// counts always produce bit-identical doubles (A* vs. Dijkstra equality).
double cell_cost(NodeCost c, double resolution) {
    return (static_cast<double>(c.straight) + static_cast<double>(c.diagonal) * kSqrt2) *
           resolution;
}

double octile(int ax, int ay, int bx, int by, double resolution) {
    int dx = std::abs(ax - bx);
    int dy = std::abs(ay - by);
    int lo = std::min(dx, dy);
    int hi = std::max(dx, dy);
    return (static_cast<double>(hi - lo) + static_cast<double>(lo) * kSqrt2) * resolution;
}

struct OpenEntry {
    double f;
    double h;
    int index;

    bool operator>(const OpenEntry& o) const {
        if (f != o.f) return f > o.f;
        if (h != o.h) return h > o.h;  // prefer nodes closer to the goal
        return index > o.index;        // deterministic final tie-break
    }
};

} // namespace

GridPath astar(const OccupancyGrid& grid, Vec2 start, Vec2 goal) {
    auto [sx, sy] = grid.cell_of(start);
    auto [gx, gy] = grid.cell_of(goal);
    if (!grid.in_bounds(sx, sy) || grid.occupied(sx, sy)) {
        throw NoPath("start cell is occupied or out of bounds");
    }
    if (!grid.in_bounds(gx, gy) || grid.occupied(gx, gy)) {
        throw NoPath("goal cell is occupied or out of bounds");
    }

    const int n = grid.nx * grid.ny;
    auto id = [&](int ix, int iy) { return iy * grid.nx + ix; };
    std::vector<NodeCost> cost(n);
    std::vector<double> g_val(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0);

    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open;
    const int start_id = id(sx, sy);
    const int goal_id = id(gx, gy);
    g_val[start_id] = 0.0;
    open.push({octile(sx, sy, gx, gy, grid.resolution),
               octile(sx, sy, gx, gy, grid.resolution), start_id});

    static constexpr int dxs[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dys[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    while (!open.empty()) {
        OpenEntry top = open.top();
        open.pop();
        if (closed[top.index]) continue;
        closed[top.index] = 1;
        if (top.index == goal_id) break;

        int cx = top.index % grid.nx;
        int cy = top.index / grid.nx;
        for (int k = 0; k < 8; ++k) {
            int nx = cx + dxs[k];
            int ny = cy + dys[k];
            if (!grid.in_bounds(nx, ny) || grid.occupied(nx, ny)) continue;
            bool diagonal = k >= 4;
            if (diagonal &&
                (grid.occupied(cx + dxs[k], cy) || grid.occupied(cx, cy + dys[k]))) {
                continue;  // no corner cutting
            }
            NodeCost cand = cost[top.index];
            if (diagonal) {
                cand.diagonal += 1;
            } else {
                cand.straight += 1;
            }
            double cand_g = cell_cost(cand, grid.resolution);
            int ni = id(nx, ny);
            if (cand_g < g_val[ni]) {
                g_val[ni] = cand_g;
                cost[ni] = cand;
                parent[ni] = top.index;
                double h = octile(nx, ny, gx, gy, grid.resolution);
                open.push({cand_g + h, h, ni});
            }
        }
    }

    if (!closed[goal_id]) throw NoPath("goal cell unreachable from start");

    GridPath path;
    path.cost = g_val[goal_id];
    for (int at = goal_id; at != -1; at = parent[at]) {
        path.waypoints.push_back(grid.cell_center(at % grid.nx, at / grid.nx));
    }
    std::reverse(path.waypoints.begin(), path.waypoints.end());
    return path;
}

Vec2 current_waypoint(std::span<const Vec2> waypoints, Vec2 com, Vec2 fallback) {
    if (waypoints.empty()) return fallback;
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < waypoints.size(); ++k) {
        double d = (waypoints[k] - com).norm_sq();
        if (d < best) {
            best = d;
            nearest = k;
        }
    }
    return waypoints[std::min(nearest + 1, waypoints.size() - 1)];
}

std::vector<Vec2> arc_herding_step(std::span<const Vec2> herders,
                                   std::span<const TargetState> targets,
                                   std::span<const Vec2> waypoints,
                                   const ArcHerdingParams& params, const OccupancyGrid* grid,
                                   Vec2 goal_center) {
    Vec2 com{0.0, 0.0};
    for (const TargetState& t : targets) com += t.position;
    com = com / static_cast<double>(targets.size());

    Vec2 wp = current_waypoint(waypoints, com, goal_center);
    Vec2 push = (wp - com).normalized();
    if (push.norm_sq() == 0.0) push = (goal_center - com).normalized();
    if (push.norm_sq() == 0.0) push = {1.0, 0.0};

    // Slots sit on an arc behind the center of mass, facing the waypoint.
    double back = std::atan2(-push.y, -push.x);
    const std::size_t n = herders.size();
    std::vector<Vec2> commands(n);
    for (std::size_t i = 0; i < n; ++i) {
        double offset = 0.0;
        if (n > 1) {
            offset = -0.5 * params.arc_span +
                     params.arc_span * static_cast<double>(i) / static_cast<double>(n - 1);
        }
        double a = back + offset;
        Vec2 slot = com + Vec2{std::cos(a), std::sin(a)} * params.arc_radius;
        if (grid) {
            auto [ix, iy] = grid->cell_of(slot);
            if (!grid->in_bounds(ix, iy) || grid->occupied(ix, iy)) {
                if (auto free = grid->nearest_free_cell(slot)) {
                    slot = grid->cell_center(free->first, free->second);
                }
            }
        }
        commands[i] = saturate((slot - herders[i]) * params.com_gain, params.v_h);
    }
    return commands;
}

} // namespace shep
