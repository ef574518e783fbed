#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ffpn/geometry.hpp"

namespace ffpn {

struct MetricStats {
    double mean = 0.0;
    double std_dev = 0.0; // population convention (divide by n)
};

/// Dataset-level metric table. Overlap metrics are percentages; the
/// boundary distance stays in input pixels.
struct MetricsTable {
    MetricStats dice_pct;
    MetricStats iou_pct;        // combined overlap
    MetricStats hausdorff_px;
    MetricStats conformity_pct;
    size_t evaluated = 0; // pairs that entered the statistics
    size_t excluded = 0;  // degenerate pairs dropped
};

/// Scores predictions against ground truths pair-by-index: dice,
/// combined overlap, boundary distance, conformity, then mean and
/// population standard deviation of each. Degenerate pairs (either
/// contour unusable, or zero overlap making conformity undefined) are
/// excluded and counted. The reduction sorts each metric's values first,
/// so permuting the pair order or changing `workers` cannot change a
/// single bit of the result.
/// Throws PairingError on length mismatch, EmptyGroundTruth when empty.
MetricsTable evaluate(const std::vector<Contour>& preds, const std::vector<Contour>& gts,
                      int workers = 1);

/// The table as CSV: header "metric,mean,std" then one row per metric
/// (DICE, IoU, HD, Conf). Numbers use shortest round-trip formatting,
/// so equal tables always serialize to identical bytes.
std::string metrics_csv(const MetricsTable& t);

} // namespace ffpn
