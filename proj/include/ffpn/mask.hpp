#pragma once

#include <cstdint>
#include <vector>

#include "ffpn/geometry.hpp"

namespace ffpn {

/// Shared raster frame for area-overlap metrics. `bounds` covers the
/// shapes being compared with a small margin; cells are square with side
/// max(width, height) / resolution, so the grid may extend past `bounds`
/// along the shorter axis.
struct GridSpec {
    Box bounds;
    int resolution = 512; // cell count along the longer axis, >= 16
};

/// Row-major binary raster produced from contours on a GridSpec.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data; // 0 or 1, row-major, row 0 at bounds.lo.y

    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t count() const; // number of set cells
};

/// Integer class-label image (0 = background), e.g. loaded from a PGM
/// file where the pixel value is the class id.
struct LabelMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> values; // row-major

    uint8_t at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
};

/// Grid that covers both boxes: union bounding box grown by 2% of its own
/// width/height on every side.
GridSpec make_shared_grid(const Box& a, const Box& b, int resolution = 512);

/// Scanline even-odd fill; a cell is set when its center lies inside the
/// polygon. Cells are square, anchored at bounds.lo.
Mask rasterize(const Contour& c, const GridSpec& grid);

/// Traces the 0.5 iso-level of the binary indicator (value == class_id)
/// with an oriented marching-squares walk; cell centers sit at integer
/// pixel coordinates. One canonical contour per connected component,
/// outer boundaries only (holes dropped), ordered by descending area;
/// components under `min_area` square pixels are discarded. A class
/// absent from the mask yields an empty list.
std::vector<Contour> extract_contours(const LabelMask& m, int class_id, double min_area = 4.0);

} // namespace ffpn
