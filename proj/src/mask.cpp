#include "ffpn/mask.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ffpn/errors.hpp"

namespace ffpn {

size_t Mask::count() const {
    size_t n = 0;
    for (uint8_t v : data) n += v;
    return n;
}

GridSpec make_shared_grid(const Box& a, const Box& b, int resolution) {
    Box u = Box::merge(a, b);
    double mx = 0.02 * u.width();
    double my = 0.02 * u.height();
    return {{{u.lo.x - mx, u.lo.y - my}, {u.hi.x + mx, u.hi.y + my}}, resolution};
}

Mask rasterize(const Contour& c, const GridSpec& grid) {
    if (grid.resolution < 16) throw EmptyRegion("grid resolution below 16");
    check_contour(c);
    double w = grid.bounds.width();
    double h = grid.bounds.height();
    double longest = std::max(w, h);
    if (!(longest > 0)) throw EmptyRegion("grid bounds have no extent");
    double cell = longest / grid.resolution;

    Mask m;
    m.width = std::max(1, static_cast<int>(std::ceil(w / cell - 1e-9)));
    m.height = std::max(1, static_cast<int>(std::ceil(h / cell - 1e-9)));
    m.data.assign(static_cast<size_t>(m.width) * m.height, 0);

    const auto& pts = c.points;
    size_t n = pts.size();
    std::vector<double> xs;
    for (int iy = 0; iy < m.height; ++iy) {
        double yc = grid.bounds.lo.y + (iy + 0.5) * cell;
        xs.clear();
        for (size_t i = 0; i < n; ++i) {
            const Vec2& a = pts[i];
            const Vec2& b = pts[(i + 1) % n];
            if ((a.y <= yc && b.y > yc) || (b.y <= yc && a.y > yc))
                xs.push_back(a.x + (yc - a.y) / (b.y - a.y) * (b.x - a.x));
        }
        std::sort(xs.begin(), xs.end());
        // Even-odd rule: centers between crossing pairs are inside.
        for (size_t k = 0; k + 1 < xs.size(); k += 2) {
            double x0 = (xs[k] - grid.bounds.lo.x) / cell - 0.5;
            double x1 = (xs[k + 1] - grid.bounds.lo.x) / cell - 0.5;
            int ix0 = std::max(0, static_cast<int>(std::ceil(x0)));
            int ix1 = std::min(m.width - 1, static_cast<int>(std::floor(x1)));
            // A center exactly on the right crossing counts as outside.
            if (ix1 >= 0 && static_cast<double>(ix1) == x1) --ix1;
            for (int ix = ix0; ix <= ix1; ++ix)
                m.data[static_cast<size_t>(iy) * m.width + ix] = 1;
        }
    }
    return m;
}

namespace {

// Marching squares on the 0.5 iso-level. Vertices live on a half-integer
// lattice; doubling gives exact integer keys for segment chaining.
struct SegmentMap {
    std::unordered_map<int64_t, std::pair<int64_t, bool>> next; // start -> (end, used)

    static int64_t key(int x2, int y2) {
        return (static_cast<int64_t>(y2) << 32) | static_cast<uint32_t>(x2);
    }
    void add(int x2a, int y2a, int x2b, int y2b) {
        next[key(x2a, y2a)] = {key(x2b, y2b), false};
    }
};

} // namespace

std::vector<Contour> extract_contours(const LabelMask& m, int class_id, double min_area) {
    auto inside = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < m.width && y < m.height && m.at(x, y) == class_id;
    };

    // Each marching cell spans samples (cx, cy)..(cx+1, cy+1); midpoints
    // of its edges double to integers. Segments keep the region on their
    // left, so outer loops come out with positive area and holes negative.
    SegmentMap segs;
    for (int cy = -1; cy < m.height; ++cy) {
        for (int cx = -1; cx < m.width; ++cx) {
            int code = (inside(cx, cy) ? 1 : 0) | (inside(cx + 1, cy) ? 2 : 0) |
                       (inside(cx, cy + 1) ? 4 : 0) | (inside(cx + 1, cy + 1) ? 8 : 0);
            if (code == 0 || code == 15) continue;
            int x2 = 2 * cx, y2 = 2 * cy;
            int t_x = x2 + 1, t_y = y2;     // top edge midpoint, doubled
            int l_x = x2, l_y = y2 + 1;     // left
            int r_x = x2 + 2, r_y = y2 + 1; // right
            int b_x = x2 + 1, b_y = y2 + 2; // bottom
            switch (code) {
            case 1: segs.add(t_x, t_y, l_x, l_y); break;            // TL
            case 2: segs.add(r_x, r_y, t_x, t_y); break;            // TR
            case 8: segs.add(b_x, b_y, r_x, r_y); break;            // BR
            case 4: segs.add(l_x, l_y, b_x, b_y); break;            // BL
            case 3: segs.add(r_x, r_y, l_x, l_y); break;            // top row
            case 10: segs.add(b_x, b_y, t_x, t_y); break;           // right column
            case 12: segs.add(l_x, l_y, r_x, r_y); break;           // bottom row
            case 5: segs.add(t_x, t_y, b_x, b_y); break;            // left column
            case 11: segs.add(b_x, b_y, l_x, l_y); break;           // all but BL
            case 14: segs.add(l_x, l_y, t_x, t_y); break;           // all but TL
            case 13: segs.add(t_x, t_y, r_x, r_y); break;           // all but TR
            case 7: segs.add(r_x, r_y, b_x, b_y); break;            // all but BR
            case 9:                                                 // TL+BR saddle
                segs.add(t_x, t_y, l_x, l_y);
                segs.add(b_x, b_y, r_x, r_y);
                break;
            case 6:                                                 // TR+BL saddle
                segs.add(r_x, r_y, t_x, t_y);
                segs.add(l_x, l_y, b_x, b_y);
                break;
            default: break;
            }
        }
    }

    std::vector<Contour> out;
    for (auto& [start, entry] : segs.next) {
        if (entry.second) continue;
        // Chain segments until the loop closes.
        std::vector<int64_t> loop;
        int64_t cur = start;
        while (true) {
            auto it = segs.next.find(cur);
            if (it == segs.next.end() || it->second.second) break;
            it->second.second = true;
            loop.push_back(cur);
            cur = it->second.first;
            if (cur == start) break;
        }
        if (cur != start || loop.size() < 3) continue;

        Contour c;
        c.class_id = class_id;
        c.points.reserve(loop.size());
        for (int64_t k : loop) {
            double x = static_cast<int32_t>(k & 0xffffffff) / 2.0;
            double y = static_cast<int32_t>(k >> 32) / 2.0;
            c.points.push_back({x, y});
        }
        // Collapse collinear runs (long straight walls produce many
        // midpoints); coordinates are half-integers, so the test is exact.
        std::vector<Vec2> slim;
        size_t n = c.points.size();
        for (size_t i = 0; i < n; ++i) {
            Vec2 prev = c.points[(i + n - 1) % n];
            Vec2 curp = c.points[i];
            Vec2 next = c.points[(i + 1) % n];
            if (cross(curp - prev, next - curp) != 0) slim.push_back(curp);
        }
        if (slim.size() < 3) continue;
        c.points = std::move(slim);

        double area = centroid_area(c).second;
        if (area < min_area) continue; // holes (negative) and specks
        out.push_back(canonicalize(c));
    }

    std::sort(out.begin(), out.end(), [](const Contour& a, const Contour& b) {
        return centroid_area(a).second > centroid_area(b).second;
    });
    return out;
}

} // namespace ffpn
