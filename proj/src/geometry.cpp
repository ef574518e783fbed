#include "ffpn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "ffpn/errors.hpp"

namespace ffpn {

namespace {

constexpr double kCoincident = 1e-9; // vertices closer than this are one point
constexpr double kMinArea = 1e-9;

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Drops consecutive duplicates, including a last vertex that repeats the
// first.
std::vector<Vec2> dedupe(const std::vector<Vec2>& pts) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const Vec2& p : pts) {
        if (out.empty() || distance(out.back(), p) > kCoincident) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= kCoincident) out.pop_back();
    return out;
}

} // namespace

std::pair<Vec2, double> centroid_area(const Contour& c) {
    const auto& p = c.points;
    if (p.size() < 3) throw DegenerateContour("contour needs at least 3 vertices");
    double twice_area = 0.0;
    double cx = 0.0, cy = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (!finite(p[i])) throw DegenerateContour("contour has non-finite vertex");
        const Vec2& a = p[i];
        const Vec2& b = p[(i + 1) % p.size()];
        double w = cross(a, b);
        twice_area += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    double area = 0.5 * twice_area;
    if (std::abs(area) < 1e-12) {
        // Shoelace centroid is undefined; fall back to the vertex mean so
        // callers that tolerate degenerate shapes still get a location.
        Vec2 mean{0, 0};
        for (const Vec2& q : p) mean = mean + q;
        return {mean * (1.0 / static_cast<double>(p.size())), area};
    }
    return {Vec2{cx / (3.0 * twice_area), cy / (3.0 * twice_area)}, area};
}

double perimeter(const Contour& c) {
    const auto& p = c.points;
    if (p.size() < 3) throw DegenerateContour("contour needs at least 3 vertices");
    double len = 0.0;
    for (size_t i = 0; i < p.size(); ++i) len += distance(p[i], p[(i + 1) % p.size()]);
    return len;
}

Box bounding_box(const Contour& c) {
    if (c.points.empty()) throw DegenerateContour("empty contour has no bounding box");
    Box b{c.points[0], c.points[0]};
    for (const Vec2& p : c.points) {
        b.lo.x = std::min(b.lo.x, p.x);
        b.lo.y = std::min(b.lo.y, p.y);
        b.hi.x = std::max(b.hi.x, p.x);
        b.hi.y = std::max(b.hi.y, p.y);
    }
    return b;
}

void check_contour(const Contour& c) {
    if (c.points.size() < 3) throw DegenerateContour("contour needs at least 3 vertices");
    for (const Vec2& p : c.points)
        if (!finite(p)) throw DegenerateContour("contour has non-finite vertex");
    double area = centroid_area(c).second;
    if (std::abs(area) < kMinArea) throw DegenerateContour("contour area below 1e-9");
}

Contour canonicalize(const Contour& c) {
    Contour out;
    out.class_id = c.class_id;
    out.points = dedupe(c.points);
    if (out.points.size() < 3) throw DegenerateContour("contour needs at least 3 distinct vertices");

    auto [centroid, area] = centroid_area(out);
    if (std::abs(area) < kMinArea) throw DegenerateContour("contour area below 1e-9");
    if (area < 0) std::reverse(out.points.begin(), out.points.end());

    // Farthest crossing of the +x ray from the centroid. Half-open edge
    // rule so a crossing shared by two edges is seen exactly once.
    auto& pts = out.points;
    size_t n = pts.size();
    double best_x = -std::numeric_limits<double>::infinity();
    size_t best_edge = 0;
    Vec2 best_hit{0, 0};
    bool found = false;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % n];
        bool down = a.y <= centroid.y && b.y > centroid.y;
        bool up = b.y <= centroid.y && a.y > centroid.y;
        if (!down && !up) continue;
        double s = (centroid.y - a.y) / (b.y - a.y);
        double x = a.x + s * (b.x - a.x);
        if (x < centroid.x - kCoincident) continue;
        if (x > best_x) {
            best_x = x;
            best_edge = i;
            best_hit = {x, centroid.y};
            found = true;
        }
    }

    size_t start;
    if (!found) {
        // No crossing (non-simple shapes can starve the ray); fall back to
        // the rightmost vertex so the result is still deterministic.
        start = 0;
        for (size_t i = 1; i < n; ++i)
            if (pts[i].x > pts[start].x) start = i;
    } else if (distance(best_hit, pts[best_edge]) <= kCoincident) {
        start = best_edge;
    } else if (distance(best_hit, pts[(best_edge + 1) % n]) <= kCoincident) {
        start = (best_edge + 1) % n;
    } else {
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(best_edge) + 1, best_hit);
        start = best_edge + 1;
        n += 1;
    }
    std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(start), pts.end());
    return out;
}

std::vector<Vec2> resample(const Contour& c, int count) {
    if (count < 3) throw InsufficientSamples("resample needs at least 3 points");
    check_contour(c);
    const auto& p = c.points;
    size_t n = p.size();
    std::vector<double> cum(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + distance(p[i], p[(i + 1) % n]);
    double total = cum[n];
    if (!(total > 0)) throw DegenerateContour("contour has zero perimeter");

    std::vector<Vec2> out(static_cast<size_t>(count));
    out[0] = p[0];
    size_t edge = 0;
    for (int k = 1; k < count; ++k) {
        double target = total * static_cast<double>(k) / static_cast<double>(count);
        while (edge + 1 < n && cum[edge + 1] <= target) ++edge;
        const Vec2& a = p[edge];
        const Vec2& b = p[(edge + 1) % n];
        double seg = cum[edge + 1] - cum[edge];
        double u = seg > 0 ? (target - cum[edge]) / seg : 0.0;
        out[static_cast<size_t>(k)] = a + (b - a) * u;
    }
    return out;
}

namespace {

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

bool on_segment(Vec2 a, Vec2 b, Vec2 q) {
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

// Proper crossing or touching of closed segments.
bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 p3, Vec2 p4) {
    int d1 = sign_of(cross(p4 - p3, p1 - p3));
    int d2 = sign_of(cross(p4 - p3, p2 - p3));
    int d3 = sign_of(cross(p2 - p1, p3 - p1));
    int d4 = sign_of(cross(p2 - p1, p4 - p1));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && on_segment(p3, p4, p1)) return true;
    if (d2 == 0 && on_segment(p3, p4, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, p3)) return true;
    if (d4 == 0 && on_segment(p1, p2, p4)) return true;
    return false;
}

} // namespace

bool is_simple(const Contour& c) {
    const auto& p = c.points;
    size_t n = p.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            // Skip edges sharing a vertex (consecutive, and first-last).
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return false;
        }
    }
    return true;
}

} // namespace ffpn
