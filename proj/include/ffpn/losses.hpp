#pragma once

#include <cstddef>
#include <vector>

#include "ffpn/geometry.hpp"
#include "ffpn/targets.hpp"

namespace ffpn {

/// Weights and shape parameters of the reference loss arithmetic.
struct LossConfig {
    double bce_weight = 0.25;   // weight on the BCE term of cls_loss
    double focal_weight = 0.75; // weight on the focal term
    double focal_gamma = 2.0;
    double focal_alpha = 0.25; // alpha_t: this for label 1, 1 - this for label 0
    double smooth_l1_beta = 1.0;
    int rays = 360; // ray count for the contour term
};

/// Smooth L1 (Huber), averaged over elements:
///   0.5 e^2 / beta   for |e| < beta
///   |e| - 0.5 beta   otherwise
/// Throws ShapeMismatch on length disagreement, EmptyRegion when empty.
double smooth_l1(const std::vector<double>& pred, const std::vector<double>& target,
                 const LossConfig& cfg = {});

/// Classification loss: bce_weight * mean BCE + focal_weight * mean
/// focal, the focal term being -alpha_t (1 - p_t)^gamma log(p_t) with
/// alpha_t = focal_alpha for label 1 and 1 - focal_alpha for label 0.
/// Scores are clamped to [1e-7, 1 - 1e-7] before any log. Labels are 0/1.
/// Throws ShapeMismatch on length disagreement, EmptyRegion when empty.
double cls_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                const LossConfig& cfg = {});

/// 1 - combined_iou(pred, gt); in [0, 1], exactly 0 for identical input.
double contour_loss(const Contour& pred, const Contour& gt, int rays = 360);

/// Itemized training loss: center offsets, coefficient deltas, contour
/// overlap, classification, and their sum.
struct LossReport {
    double l_loc = 0.0; // smooth L1 of (dx, dy), mean over positives
    double l_fou = 0.0; // smooth L1 of the coefficient deltas, mean over positives
    double l_con = 0.0; // contour_loss, mean over positives
    double l_cls = 0.0; // cls_loss over every scored sample
    double total = 0.0; // sum of the four
    size_t positives = 0;
    bool no_positives = false; // l_loc, l_fou, l_con forced to 0
};

/// Aggregates the four terms. `scores`/`labels` cover every non-ignored
/// sample; the four positives vectors are index-paired per positive
/// sample and must share one length (ShapeMismatch otherwise). With zero
/// positives the three geometry terms are 0 and the flag is set.
LossReport total_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                      const std::vector<RegressionTargets>& pred_targets,
                      const std::vector<RegressionTargets>& gt_targets,
                      const std::vector<Contour>& pred_contours,
                      const std::vector<Contour>& gt_contours,
                      const LossConfig& cfg = {});

} // namespace ffpn
