#pragma once

#include "ffpn/geometry.hpp"
#include "ffpn/mask.hpp"

namespace ffpn {

/// IoU of two axis-aligned boxes; 0 when the union is empty.
double box_iou(const Box& a, const Box& b);

/// IoU of the vertex-set bounding boxes of two contours.
double box_iou(const Contour& a, const Contour& b);

/// Ray-sweep overlap: from the midpoint of the two centroids cast
/// `rays` uniformly spaced rays; d_j is the farthest boundary crossing
/// along ray j for each shape (0 when a ray misses the shape). Returns
/// sum(min(d_a, d_b)) / sum(max(d_a, d_b)). Symmetric by construction.
/// Throws DegeneratePair when the denominator is zero.
double polar_iou(const Contour& a, const Contour& b, int rays = 360);

/// polar_iou * box_iou. Returns exactly 0 without casting rays when the
/// boxes do not overlap, so far-apart shapes can never score above zero.
double combined_iou(const Contour& a, const Contour& b, int rays = 360);

/// Dice coefficient 2|A and B| / (|A| + |B|) of the two rasterizations
/// on `grid`. Throws EmptyRegion when either mask is empty.
double dice(const Contour& a, const Contour& b, const GridSpec& grid);

/// Same, on a shared grid built from the two bounding boxes.
double dice(const Contour& a, const Contour& b, int resolution = 512);

/// Symmetric Hausdorff distance between boundaries, approximated with
/// `boundary_samples` arc-length-uniform samples per contour.
double hausdorff(const Contour& a, const Contour& b, int boundary_samples = 1000);

/// Conformity (3 * dice - 2) / dice; throws Undefined when dice == 0.
double conformity(double dice_value);

} // namespace ffpn
