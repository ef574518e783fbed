#include "ffpn/losses.hpp"

#include <algorithm>
#include <cmath>

#include "ffpn/errors.hpp"
#include "ffpn/metrics.hpp"

namespace ffpn {

namespace {

double huber(double e, double beta) {
    double ae = std::abs(e);
    return ae < beta ? 0.5 * e * e / beta : ae - 0.5 * beta;
}

std::vector<double> flatten(const RegressionTargets& t) {
    std::vector<double> v;
    v.reserve(4 * t.deltas.size());
    for (const Harmonic& h : t.deltas) {
        v.push_back(h.a);
        v.push_back(h.b);
        v.push_back(h.c);
        v.push_back(h.d);
    }
    return v;
}

} // namespace

double smooth_l1(const std::vector<double>& pred, const std::vector<double>& target,
                 const LossConfig& cfg) {
    if (pred.size() != target.size()) throw ShapeMismatch("smooth_l1 length mismatch");
    if (pred.empty()) throw EmptyRegion("smooth_l1 over no elements");
    double sum = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) sum += huber(pred[i] - target[i], cfg.smooth_l1_beta);
    return sum / static_cast<double>(pred.size());
}

double cls_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                const LossConfig& cfg) {
    if (scores.size() != labels.size()) throw ShapeMismatch("cls_loss length mismatch");
    if (scores.empty()) throw EmptyRegion("cls_loss over no samples");

    double bce = 0.0, focal = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
        double p = std::clamp(scores[i], 1e-7, 1.0 - 1e-7);
        bool pos = labels[i] != 0;
        bce += pos ? -std::log(p) : -std::log(1.0 - p);
        double pt = pos ? p : 1.0 - p;
        double at = pos ? cfg.focal_alpha : 1.0 - cfg.focal_alpha;
        focal += -at * std::pow(1.0 - pt, cfg.focal_gamma) * std::log(pt);
    }
    double n = static_cast<double>(scores.size());
    return cfg.bce_weight * bce / n + cfg.focal_weight * focal / n;
}

double contour_loss(const Contour& pred, const Contour& gt, int rays) {
    return 1.0 - combined_iou(pred, gt, rays);
}

LossReport total_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                      const std::vector<RegressionTargets>& pred_targets,
                      const std::vector<RegressionTargets>& gt_targets,
                      const std::vector<Contour>& pred_contours,
                      const std::vector<Contour>& gt_contours,
                      const LossConfig& cfg) {
    size_t n = pred_targets.size();
    if (gt_targets.size() != n || pred_contours.size() != n || gt_contours.size() != n)
        throw ShapeMismatch("total_loss positive vectors disagree in length");

    LossReport r;
    r.l_cls = cls_loss(scores, labels, cfg);
    r.positives = n;
    if (n == 0) {
        r.no_positives = true;
    } else {
        for (size_t i = 0; i < n; ++i) {
            r.l_loc += smooth_l1({pred_targets[i].dx, pred_targets[i].dy},
                                 {gt_targets[i].dx, gt_targets[i].dy}, cfg);
            r.l_fou += smooth_l1(flatten(pred_targets[i]), flatten(gt_targets[i]), cfg);
            r.l_con += contour_loss(pred_contours[i], gt_contours[i], cfg.rays);
        }
        r.l_loc /= static_cast<double>(n);
        r.l_fou /= static_cast<double>(n);
        r.l_con /= static_cast<double>(n);
    }
    r.total = r.l_loc + r.l_fou + r.l_con + r.l_cls;
    return r;
}

} // namespace ffpn
