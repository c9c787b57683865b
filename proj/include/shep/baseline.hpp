#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shep/geometry.hpp"
#include "shep/targets.hpp"

namespace shep {

/// Cohesive-herding comparator parameters: herders hold an arc behind the
/// targets' center of mass and push it along a grid-planned path.
struct ArcHerdingParams {
    double arc_radius;       ///< m
    double arc_span;         ///< rad, full angular extent of the arc
    double com_gain;         ///< slot-attraction gain
    double grid_resolution;  ///< m per cell
    double grid_inflation;   ///< obstacle inflation for planning, m
    double v_h;              ///< herder speed cap, m/s
};

/// Boolean occupancy grid over an axis-aligned domain.
struct OccupancyGrid {
    Vec2 origin;        ///< world position of cell (0,0)'s lower-left corner
    double resolution;  ///< m per cell
    int nx{0};
    int ny{0};
    std::vector<std::uint8_t> cells;  ///< row-major, 1 = occupied

    bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < nx && iy >= 0 && iy < ny; }
    bool occupied(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * nx + ix] != 0; }
    Vec2 cell_center(int ix, int iy) const {
        return origin + Vec2{(ix + 0.5) * resolution, (iy + 0.5) * resolution};
    }
    std::pair<int, int> cell_of(Vec2 p) const;

    /// Free cell nearest to p by ring search (empty when the grid is full).
    std::optional<std::pair<int, int>> nearest_free_cell(Vec2 p) const;
};

/// Cell occupied iff its center lies within an obstacle inflated by `inflation`.
OccupancyGrid rasterize(std::span<const ConvexPolygon> obstacles, Vec2 lo, Vec2 hi,
                        double resolution, double inflation);

struct GridPath {
    std::vector<Vec2> waypoints;  ///< cell centers from start to goal
    double cost;                  ///< octile length in meters
};

/// 8-connected A* with the octile heuristic; diagonal moves may not cut
/// corners.  Throws NoPath when start/goal cells are occupied or disconnected.
GridPath astar(const OccupancyGrid& grid, Vec2 start, Vec2 goal);

/// Waypoint the group is currently driving toward: the successor of the
/// path point nearest to the center of mass.
Vec2 current_waypoint(std::span<const Vec2> waypoints, Vec2 com, Vec2 fallback);

/// Per-herder velocity commands holding the pushing arc behind the targets'
/// center of mass, oriented against the current waypoint direction.  Slots
/// that fall inside obstacles are moved to the nearest free cell center.
std::vector<Vec2> arc_herding_step(std::span<const Vec2> herders,
                                   std::span<const TargetState> targets,
                                   std::span<const Vec2> waypoints,
                                   const ArcHerdingParams& params,
                                   const OccupancyGrid* grid, Vec2 goal_center = {0.0, 0.0});

} // namespace shep
