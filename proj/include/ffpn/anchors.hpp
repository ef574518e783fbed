#pragma once

#include <cstdint>
#include <vector>

#include "ffpn/descriptor.hpp"
#include "ffpn/targets.hpp"

namespace ffpn {

/// Prototype contour shapes plus the grid they are replicated over.
struct AnchorSet {
    std::vector<FourierDescriptor> base_anchors; // centers all (0, 0)
    int stride = 8;
    int image_w = 416;
    int image_h = 416;
};

/// Clusters the coefficient blocks of `shapes` (centers excluded) into k
/// prototypes with seeded k-means: k-means++ start, Lloyd updates, at
/// most 100 rounds, stop when no centroid moves more than 1e-6. Empty
/// clusters keep their previous centroid. Base anchors are the final
/// centroids with center (0, 0), ordered by descending cluster
/// population with ties broken by the first coefficient. Identical seed
/// and input give identical output.
///
/// All inputs must share one harmonic order (ShapeMismatch) and at least
/// k distinct coefficient vectors must exist (DegenerateClustering).
/// When `wcss_trace` is given it receives the within-cluster sum of
/// squares after every assignment round (non-increasing).
AnchorSet fit_anchors(const std::vector<FourierDescriptor>& shapes, int k, uint64_t seed,
                      std::vector<double>* wcss_trace = nullptr);

/// Replicates the base anchors over the stride grid: cells scan the
/// image row-major, cell (i, j) centers its anchors at
/// ((i + 0.5) * stride, (j + 0.5) * stride), and within a cell the base
/// anchors appear in order. Exactly ceil(w / stride) * ceil(h / stride)
/// * k anchors.
std::vector<FourierDescriptor> tile_anchors(const AnchorSet& a);

struct AssignConfig {
    double pos_threshold = 0.25;
    double neg_threshold = 0.10;
    bool force_match = true; // promote an anchor for every unmatched gt
    int decode_samples = 64; // anchor outline resolution for overlap tests
};

/// Per-anchor decision: positive (supervised by a ground truth),
/// negative (background), or ignored (between the thresholds).
enum class AnchorLabel : int8_t { Negative = 0, Positive = 1, Ignore = -1 };

struct AssignmentResult {
    std::vector<AnchorLabel> labels;
    std::vector<int> matched_gt;            // gt index for positives, -1 otherwise
    std::vector<double> max_iou;            // best overlap seen per anchor
    std::vector<RegressionTargets> targets; // meaningful only where positive
};

/// Matches placed anchors to ground-truth contours by combined overlap
/// of the decoded anchor outline against each ground truth. Anchors at
/// or above pos_threshold become positive and keep their best gt (ties
/// take the lower gt index); below neg_threshold negative; in between
/// ignored. With force_match, every ground truth left without a positive
/// then promotes its best not-yet-positive anchor so no gt goes
/// unsupervised. Positives carry the anchor-relative targets of their
/// ground truth. Work fans out over `workers` threads; the result is
/// identical for any worker count.
/// Throws EmptyGroundTruth / EmptyProposals on empty input.
AssignmentResult assign(const std::vector<FourierDescriptor>& anchors,
                        const std::vector<Contour>& ground_truths,
                        const AssignConfig& cfg = {}, int workers = 1);

} // namespace ffpn
