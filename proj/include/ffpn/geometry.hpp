#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace ffpn {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Axis-aligned box. Empty when hi < lo in either dimension.
struct Box {
    Vec2 lo{0, 0};
    Vec2 hi{0, 0};

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const {
        double w = width(), h = height();
        return (w <= 0 || h <= 0) ? 0.0 : w * h;
    }

    static Box merge(const Box& a, const Box& b) {
        return {{std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y)},
                {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y)}};
    }
    static double intersection_area(const Box& a, const Box& b) {
        double w = std::min(a.hi.x, b.hi.x) - std::max(a.lo.x, b.lo.x);
        double h = std::min(a.hi.y, b.hi.y) - std::max(a.lo.y, b.lo.y);
        return (w <= 0 || h <= 0) ? 0.0 : w * h;
    }
};

/// Closed polygon in pixel coordinates. The last vertex connects back to
/// the first implicitly. A canonical contour is counter-clockwise
/// (positive shoelace area) and starts at the point where the ray from
/// the centroid along +x crosses the boundary farthest out.
struct Contour {
    std::vector<Vec2> points;
    int class_id = 0;

    std::size_t size() const { return points.size(); }
};

/// Shoelace centroid and signed area (counter-clockwise positive).
/// Throws DegenerateContour for fewer than 3 vertices or non-finite input.
std::pair<Vec2, double> centroid_area(const Contour& c);

double perimeter(const Contour& c);

Box bounding_box(const Contour& c);

/// Validates vertex count, coordinate finiteness and |area| >= 1e-9.
/// Throws DegenerateContour otherwise.
void check_contour(const Contour& c);

/// Rewrites a contour into canonical form: duplicate consecutive vertices
/// dropped, counter-clockwise orientation, traversal starting at the
/// farthest boundary crossing of the +x ray from the centroid (inserted
/// as a vertex when it is not one already). Idempotent.
Contour canonicalize(const Contour& c);

/// `count` points uniformly spaced by arc length along the polygon,
/// starting at vertex 0. Total traversal equals the perimeter.
std::vector<Vec2> resample(const Contour& c, int count);

/// True when no two non-adjacent edges intersect or touch.
bool is_simple(const Contour& c);

} // namespace ffpn
