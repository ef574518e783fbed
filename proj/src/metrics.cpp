#include "ffpn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ffpn/errors.hpp"

namespace ffpn {

double box_iou(const Box& a, const Box& b) {
    double inter = Box::intersection_area(a, b);
    double uni = a.area() + b.area() - inter;
    return uni > 0 ? inter / uni : 0.0;
}

double box_iou(const Contour& a, const Contour& b) {
    check_contour(a);
    check_contour(b);
    return box_iou(bounding_box(a), bounding_box(b));
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Farthest intersection of the ray origin + s*dir (s >= 0) with the
// polygon boundary; 0 when the ray misses entirely. The edge parameter
// tolerates the endpoints: a ray passing through a shared vertex must
// register on at least one adjacent edge, and taking the max makes the
// occasional double count harmless.
double farthest_hit(const Contour& c, Vec2 origin, Vec2 dir) {
    constexpr double kEndSlack = 1e-12;
    const auto& p = c.points;
    size_t n = p.size();
    double best = 0.0;
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = p[i];
        Vec2 e = p[(i + 1) % n] - a;
        double denom = cross(dir, e);
        if (denom == 0.0) continue; // parallel edge
        Vec2 w = a - origin;
        double s = cross(w, e) / denom;
        double u = cross(w, dir) / denom;
        if (s >= 0.0 && u >= -kEndSlack && u <= 1.0 + kEndSlack && s > best) best = s;
    }
    return best;
}

} // namespace

double polar_iou(const Contour& a, const Contour& b, int rays) {
    if (rays < 1) throw DegeneratePair("ray count must be positive");
    check_contour(a);
    check_contour(b);
    Vec2 ca = centroid_area(a).first;
    Vec2 cb = centroid_area(b).first;
    Vec2 center = (ca + cb) * 0.5;

    double sum_min = 0.0, sum_max = 0.0;
    for (int j = 0; j < rays; ++j) {
        double ang = kTwoPi * (static_cast<double>(j) / static_cast<double>(rays));
        Vec2 dir{std::cos(ang), std::sin(ang)};
        double da = farthest_hit(a, center, dir);
        double db = farthest_hit(b, center, dir);
        sum_min += std::min(da, db);
        sum_max += std::max(da, db);
    }
    if (sum_max == 0.0) throw DegeneratePair("no ray reaches either boundary");
    return sum_min / sum_max;
}

double combined_iou(const Contour& a, const Contour& b, int rays) {
    double biou = box_iou(a, b);
    if (biou == 0.0) return 0.0; // disjoint; skip the ray sweep entirely
    return polar_iou(a, b, rays) * biou;
}

double dice(const Contour& a, const Contour& b, const GridSpec& grid) {
    Mask ma = rasterize(a, grid);
    Mask mb = rasterize(b, grid);
    size_t ca = ma.count(), cb = mb.count();
    if (ca == 0 || cb == 0) throw EmptyRegion("contour rasterizes to an empty mask");
    size_t inter = 0;
    for (size_t i = 0; i < ma.data.size(); ++i) inter += ma.data[i] & mb.data[i];
    return 2.0 * static_cast<double>(inter) / static_cast<double>(ca + cb);
}

double dice(const Contour& a, const Contour& b, int resolution) {
    return dice(a, b, make_shared_grid(bounding_box(a), bounding_box(b), resolution));
}

double hausdorff(const Contour& a, const Contour& b, int boundary_samples) {
    std::vector<Vec2> pa = resample(a, boundary_samples);
    std::vector<Vec2> pb = resample(b, boundary_samples);

    // Directed pass with the usual early-out: once a point's nearest
    // neighbour is within the current bound it cannot raise the maximum.
    auto directed_sq = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        double worst = 0.0;
        for (const Vec2& p : from) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const Vec2& q : to) {
                double dx = p.x - q.x, dy = p.y - q.y;
                double d = dx * dx + dy * dy;
                if (d < nearest) {
                    nearest = d;
                    if (nearest <= worst) break;
                }
            }
            if (nearest > worst) worst = nearest;
        }
        return worst;
    };
    return std::sqrt(std::max(directed_sq(pa, pb), directed_sq(pb, pa)));
}

double conformity(double dice_value) {
    if (dice_value == 0.0) throw Undefined("conformity undefined at dice 0");
    return (3.0 * dice_value - 2.0) / dice_value;
}

} // namespace ffpn
