#pragma once

#include <vector>

#include "ffpn/descriptor.hpp"
#include "ffpn/targets.hpp"

namespace ffpn {

struct ScoredProposal {
    FourierDescriptor descriptor;
    double score = 0.0; // finite, in [0, 1]
    int class_id = 0;
};

struct RefineConfig {
    int top_n = 20;
    double cluster_iou = 0.7; // membership threshold, in (0, 1)
    int sample_k = 16;        // boundary points per merged contour, >= 3
    double box_scale = 0.2;   // box side as a fraction of the max bbox side
    int decode_samples = 128; // outline resolution for overlap tests
};

/// Consensus contour of one proposal cluster.
struct MergedContour {
    FourierDescriptor descriptor;
    int member_count = 0;
    double mean_member_iou = 0.0; // mean overlap between this and each member
};

/// Per class id, the top_n highest-scoring proposals (ties keep earlier
/// input order); classes with fewer proposals return what they have.
/// Groups appear in ascending class_id order.
std::vector<std::vector<ScoredProposal>> select_top_n(const std::vector<ScoredProposal>& proposals,
                                                      const RefineConfig& cfg = {});

/// Picks the proposal that agrees with the most others (overlap of the
/// decoded outlines >= cluster_iou; ties prefer the higher score, then
/// the earlier index) and returns it plus everything it agrees with.
/// When nothing agrees with anything the single best-scoring proposal is
/// returned alone. Throws EmptyProposals on empty input.
std::vector<ScoredProposal> cluster_proposals(const std::vector<ScoredProposal>& proposals,
                                              const RefineConfig& cfg = {});

/// Unweighted arithmetic mean of the member descriptors (centers and
/// every coefficient). mean_member_iou averages the overlap between the
/// merged outline and each member's. All members must share one harmonic
/// order (ShapeMismatch); empty input throws EmptyProposals.
MergedContour merge_cluster(const std::vector<ScoredProposal>& members,
                            const RefineConfig& cfg = {});

/// sample_k boundary points (the series evaluated at t = 0..sample_k-1
/// with period sample_k) followed by the descriptor center:
/// sample_k + 1 points total.
std::vector<Vec2> sample_points(const MergedContour& m, const RefineConfig& cfg = {});

/// One square box per point, centered on it, side = box_scale * max
/// bounding-box side of the merged contour decoded at decode_samples.
/// With image_w/image_h > 0 boxes are clipped to [0, W] x [0, H].
std::vector<Box> sample_boxes(const std::vector<Vec2>& points, const MergedContour& m,
                              const RefineConfig& cfg = {}, int image_w = 0, int image_h = 0);

/// Targets of `g` relative to the merged contour, and their application.
/// Same contract as encode_targets / decode_targets with the merged
/// descriptor as the anchor; refine_apply consumes exactly one delta.
RegressionTargets refine_encode(const FourierDescriptor& g, const MergedContour& m);
FourierDescriptor refine_apply(const MergedContour& m, const RegressionTargets& d);

} // namespace ffpn
