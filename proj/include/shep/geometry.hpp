#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "shep/errors.hpp"

namespace shep {

/// Planar vector in meters. Doubles as position, velocity and force.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

    Vec2& operator+=(Vec2 r) {
        x += r.x;
        y += r.y;
        return *this;
    }
    Vec2& operator-=(Vec2 r) {
        x -= r.x;
        y -= r.y;
        return *this;
    }
    Vec2& operator*=(double s) {
        x *= s;
        y *= s;
        return *this;
    }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }

    /// Unit vector in the same direction, or {0,0} when shorter than eps.
    Vec2 normalized(double eps = 1e-15) const {
        double n = norm();
        if (n <= eps) return {0.0, 0.0};
        return {x / n, y / n};
    }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

/// z-component of the 3D cross product of two planar vectors.
constexpr double cross_z(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Quarter-turn rotations, computed by exact component swaps (no trig roundoff).
constexpr Vec2 rot90ccw(Vec2 v) { return {-v.y, v.x}; }  // R(+pi/2)
constexpr Vec2 rot90cw(Vec2 v) { return {v.y, -v.x}; }   // R(-pi/2)

/// Planar rotation by a fixed angle.
struct Rotation {
    double angle{0.0};

    Vec2 apply(Vec2 v) const {
        double c = std::cos(angle);
        double s = std::sin(angle);
        return {c * v.x - s * v.y, s * v.x + c * v.y};
    }
};

/// Result of projecting a point onto a polygon boundary.
struct BoundaryProjection {
    Vec2 point;        ///< closest boundary point
    std::size_t edge;  ///< index of the edge realizing the minimum
    double distance;   ///< distance from the query point to `point`
};

/**
 * Strictly convex polygon with counter-clockwise vertices.
 *
 * Rectangles (the only shape used by the stock scenarios) are expanded to
 * four vertices at construction so one projection routine serves everything.
 */
class ConvexPolygon {
  public:
    /// Validates CCW order and strict convexity; throws ValidationError otherwise.
    explicit ConvexPolygon(std::vector<Vec2> vertices);

    /// Axis-aligned w x h rectangle at `center`, then rotated by `rotation`.
    /// The first edge is the +x-facing side when rotation = 0.
    static ConvexPolygon rectangle(Vec2 center, double width, double height, double rotation);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    Vec2 centroid() const { return centroid_; }
    std::size_t size() const { return vertices_.size(); }

    /// True when q is inside and not on the boundary.
    bool strictly_inside(Vec2 q) const;
    /// True when q is inside or on the boundary.
    bool contains(Vec2 q) const;

    /// Closest boundary point; interior queries also return the nearest
    /// boundary point. Equidistant edges tie-break to the smallest index.
    BoundaryProjection project_ex(Vec2 q) const;
    Vec2 project_onto_boundary(Vec2 q) const { return project_ex(q).point; }

    /// Unit outward normal of edge k (vertices are CCW).
    Vec2 edge_outward_normal(std::size_t edge) const;

  private:
    std::vector<Vec2> vertices_;
    Vec2 centroid_;
};

/// Vector from the boundary of `poly` to q; zero for boundary points.
/// Throws InsideObstacle for strictly interior points.
Vec2 separation_vector(Vec2 q, const ConvexPolygon& poly);

/// Distance between the boundaries of two polygons (0 when they touch or cross).
double set_distance(const ConvexPolygon& a, const ConvexPolygon& b);

Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

/// Distance from segment [a,b] to the solid polygon (0 when they intersect).
double segment_polygon_distance(Vec2 a, Vec2 b, const ConvexPolygon& poly);

} // namespace shep
