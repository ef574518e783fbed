#include "ffpn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ffpn/errors.hpp"
#include "ffpn/io.hpp"
#include "ffpn/metrics.hpp"
#include "ffpn/parallel.hpp"

namespace ffpn {

namespace {

MetricStats stats_of(std::vector<double>& values) {
    // Sorting first makes the reduction a pure function of the value
    // multiset: pair order and worker count cannot change a bit.
    std::sort(values.begin(), values.end());
    size_t n = values.size();
    if (n == 0) return {0.0, 0.0};
    double sum = 0.0;
    for (double v : values) sum += v;
    double mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

} // namespace

MetricsTable evaluate(const std::vector<Contour>& preds, const std::vector<Contour>& gts,
                      int workers) {
    if (preds.size() != gts.size()) throw PairingError("prediction/ground-truth count mismatch");
    if (gts.empty()) throw EmptyGroundTruth("nothing to evaluate");

    size_t n = gts.size();
    std::vector<double> dice_col(n), iou_col(n), hd_col(n), conf_col(n);
    std::vector<uint8_t> bad(n, 0);
    parallel_for(n, workers, [&](size_t k) {
        try {
            double dv = dice(preds[k], gts[k]);
            dice_col[k] = dv * 100.0;
            iou_col[k] = combined_iou(preds[k], gts[k]) * 100.0;
            hd_col[k] = hausdorff(preds[k], gts[k]);
            conf_col[k] = conformity(dv) * 100.0;
        } catch (const Error&) {
            bad[k] = 1; // degenerate pair: flag and exclude
        }
    });

    MetricsTable t;
    std::vector<double> dv, iv, hv, cv;
    for (size_t k = 0; k < n; ++k) {
        if (bad[k]) {
            t.excluded += 1;
            continue;
        }
        dv.push_back(dice_col[k]);
        iv.push_back(iou_col[k]);
        hv.push_back(hd_col[k]);
        cv.push_back(conf_col[k]);
    }
    t.evaluated = dv.size();
    t.dice_pct = stats_of(dv);
    t.iou_pct = stats_of(iv);
    t.hausdorff_px = stats_of(hv);
    t.conformity_pct = stats_of(cv);
    return t;
}

std::string metrics_csv(const MetricsTable& t) {
    std::string out = "metric,mean,std\n";
    auto row = [&out](const char* name, const MetricStats& s) {
        out += name;
        out += ',';
        out += format_double(s.mean);
        out += ',';
        out += format_double(s.std_dev);
        out += '\n';
    };
    row("DICE", t.dice_pct);
    row("IoU", t.iou_pct);
    row("HD", t.hausdorff_px);
    row("Conf", t.conformity_pct);
    return out;
}

} // namespace ffpn
