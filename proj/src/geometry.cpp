#include "shep/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace shep {

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw ValidationError("polygon needs at least 3 vertices, got " + std::to_string(n));
    }
    for (const Vec2& v : vertices_) {
        if (!v.finite()) throw ValidationError("polygon vertex is not finite");
    }
    // Strict convexity with CCW winding: every consecutive edge pair turns left.
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = vertices_[i];
        Vec2 b = vertices_[(i + 1) % n];
        Vec2 c = vertices_[(i + 2) % n];
        if (cross_z(b - a, c - b) <= 0.0) {
            throw ValidationError("polygon is not strictly convex CCW at vertex " +
                                  std::to_string((i + 1) % n));
        }
    }
    // Area centroid of the vertex polygon.
    double area2 = 0.0;
    Vec2 c{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = vertices_[i];
        Vec2 b = vertices_[(i + 1) % n];
        double w = cross_z(a, b);
        area2 += w;
        c += (a + b) * w;
    }
    centroid_ = c / (3.0 * area2);
}

ConvexPolygon ConvexPolygon::rectangle(Vec2 center, double width, double height, double rotation) {
    if (!(width > 0.0) || !(height > 0.0)) {
        throw ValidationError("rectangle needs positive width and height");
    }
    Rotation rot{rotation};
    double hw = 0.5 * width;
    double hh = 0.5 * height;
    // CCW starting at the bottom-right corner, so edge 0 faces +x at rotation 0.
    std::vector<Vec2> verts = {
        center + rot.apply({hw, -hh}),
        center + rot.apply({hw, hh}),
        center + rot.apply({-hw, hh}),
        center + rot.apply({-hw, -hh}),
    };
    return ConvexPolygon(std::move(verts));
}

bool ConvexPolygon::strictly_inside(Vec2 q) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = vertices_[i];
        Vec2 b = vertices_[(i + 1) % n];
        if (cross_z(b - a, q - a) <= 0.0) return false;
    }
    return true;
}

bool ConvexPolygon::contains(Vec2 q) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = vertices_[i];
        Vec2 b = vertices_[(i + 1) % n];
        if (cross_z(b - a, q - a) < 0.0) return false;
    }
    return true;
}

BoundaryProjection ConvexPolygon::project_ex(Vec2 q) const {
    const std::size_t n = vertices_.size();
    BoundaryProjection best{vertices_[0], 0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 p = closest_point_on_segment(q, vertices_[i], vertices_[(i + 1) % n]);
        double d = (q - p).norm();
        if (d < best.distance) {  // strict: ties keep the smallest edge index
            best = {p, i, d};
        }
    }
    return best;
}

Vec2 ConvexPolygon::edge_outward_normal(std::size_t edge) const {
    Vec2 a = vertices_[edge];
    Vec2 b = vertices_[(edge + 1) % vertices_.size()];
    return rot90cw(b - a).normalized();
}

Vec2 separation_vector(Vec2 q, const ConvexPolygon& poly) {
    if (poly.strictly_inside(q)) {
        throw InsideObstacle("query point is strictly inside an obstacle");
    }
    return q - poly.project_onto_boundary(q);
}

double set_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < va.size(); ++i) {
        Vec2 a0 = va[i];
        Vec2 a1 = va[(i + 1) % va.size()];
        for (std::size_t j = 0; j < vb.size(); ++j) {
            Vec2 b0 = vb[j];
            Vec2 b1 = vb[(j + 1) % vb.size()];
            best = std::min(best, segment_segment_distance(a0, a1, b0, b1));
        }
    }
    return best;
}

Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len_sq = ab.norm_sq();
    if (len_sq <= 0.0) return a;
    double t = (p - a).dot(ab) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    return a + ab * t;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    return (p - closest_point_on_segment(p, a, b)).norm();
}

namespace {

bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross_z(q - p, r - p); };
    double o1 = orient(a0, a1, b0);
    double o2 = orient(a0, a1, b1);
    double o3 = orient(b0, b1, a0);
    double o4 = orient(b0, b1, a1);
    if (((o1 > 0.0) != (o2 > 0.0)) && ((o3 > 0.0) != (o4 > 0.0)) &&
        o1 != 0.0 && o2 != 0.0 && o3 != 0.0 && o4 != 0.0) {
        return true;
    }
    // Collinear / endpoint-touching cases fall through; the point-segment
    // distances below report 0 for them anyway.
    return false;
}

} // namespace

double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    if (segments_intersect(a0, a1, b0, b1)) return 0.0;
    double d = point_segment_distance(a0, b0, b1);
    d = std::min(d, point_segment_distance(a1, b0, b1));
    d = std::min(d, point_segment_distance(b0, a0, a1));
    d = std::min(d, point_segment_distance(b1, a0, a1));
    return d;
}

double segment_polygon_distance(Vec2 a, Vec2 b, const ConvexPolygon& poly) {
    if (poly.contains(a) || poly.contains(b)) return 0.0;
    const auto& v = poly.vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        best = std::min(best, segment_segment_distance(a, b, v[i], v[(i + 1) % v.size()]));
        if (best == 0.0) break;
    }
    return best;
}

} // namespace shep
