#include "ffpn/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ffpn/errors.hpp"
#include "ffpn/metrics.hpp"
#include "ffpn/parallel.hpp"

namespace ffpn {

namespace {

std::vector<double> flatten_coeffs(const FourierDescriptor& d) {
    std::vector<double> v;
    v.reserve(4 * d.harmonics.size());
    for (const Harmonic& h : d.harmonics) {
        v.push_back(h.a);
        v.push_back(h.b);
        v.push_back(h.c);
        v.push_back(h.d);
    }
    return v;
}

double dist_sq(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Uniform double in [0, 1) built from raw engine bits so the sampling
// sequence is pinned to the engine, not to a distribution implementation.
double uniform_unit(std::mt19937_64& rng) {
    return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

} // namespace

AnchorSet fit_anchors(const std::vector<FourierDescriptor>& shapes, int k, uint64_t seed,
                      std::vector<double>* wcss_trace) {
    if (k < 1) throw DegenerateClustering("cluster count must be at least 1");
    if (shapes.empty()) throw DegenerateClustering("no shapes to cluster");
    int order = shapes[0].order();
    for (const FourierDescriptor& d : shapes) {
        check_descriptor(d);
        if (d.order() != order) throw ShapeMismatch("clustering needs one harmonic order");
    }

    std::vector<std::vector<double>> data;
    data.reserve(shapes.size());
    for (const FourierDescriptor& d : shapes) data.push_back(flatten_coeffs(d));

    {
        std::vector<std::vector<double>> uniq = data;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        if (uniq.size() < static_cast<size_t>(k))
            throw DegenerateClustering("fewer distinct shapes than clusters");
    }

    size_t n = data.size();
    std::mt19937_64 rng(seed);

    // k-means++ seeding: first pick uniform, the rest proportional to the
    // squared distance from the chosen set.
    std::vector<std::vector<double>> centroids;
    centroids.reserve(static_cast<size_t>(k));
    centroids.push_back(data[rng() % n]);
    std::vector<double> d2(n);
    while (centroids.size() < static_cast<size_t>(k)) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double best = dist_sq(data[i], centroids[0]);
            for (size_t j = 1; j < centroids.size(); ++j)
                best = std::min(best, dist_sq(data[i], centroids[j]));
            d2[i] = best;
            total += best;
        }
        double u = uniform_unit(rng) * total;
        size_t pick = n - 1;
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            acc += d2[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        centroids.push_back(data[pick]);
    }

    std::vector<size_t> owner(n, 0);
    std::vector<size_t> population(static_cast<size_t>(k), 0);
    for (int round = 0; round < 100; ++round) {
        double wcss = 0.0;
        std::fill(population.begin(), population.end(), 0);
        for (size_t i = 0; i < n; ++i) {
            size_t best = 0;
            double bd = dist_sq(data[i], centroids[0]);
            for (size_t j = 1; j < centroids.size(); ++j) {
                double d = dist_sq(data[i], centroids[j]);
                if (d < bd) {
                    bd = d;
                    best = j;
                }
            }
            owner[i] = best;
            population[best] += 1;
            wcss += bd;
        }
        if (wcss_trace) wcss_trace->push_back(wcss);

        double max_shift_sq = 0.0;
        for (size_t j = 0; j < centroids.size(); ++j) {
            if (population[j] == 0) continue; // keep the old centroid
            std::vector<double> mean(data[0].size(), 0.0);
            for (size_t i = 0; i < n; ++i)
                if (owner[i] == j)
                    for (size_t t = 0; t < mean.size(); ++t) mean[t] += data[i][t];
            for (double& v : mean) v /= static_cast<double>(population[j]);
            max_shift_sq = std::max(max_shift_sq, dist_sq(mean, centroids[j]));
            centroids[j] = std::move(mean);
        }
        if (max_shift_sq < 1e-6 * 1e-6) break;
    }

    // Final population count against the converged centroids.
    std::fill(population.begin(), population.end(), 0);
    for (size_t i = 0; i < n; ++i) {
        size_t best = 0;
        double bd = dist_sq(data[i], centroids[0]);
        for (size_t j = 1; j < centroids.size(); ++j) {
            double d = dist_sq(data[i], centroids[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        population[best] += 1;
    }

    std::vector<size_t> idx(centroids.size());
    for (size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    std::stable_sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
        if (population[x] != population[y]) return population[x] > population[y];
        return centroids[x][0] < centroids[y][0];
    });

    AnchorSet set;
    set.base_anchors.reserve(centroids.size());
    for (size_t j : idx) {
        FourierDescriptor d;
        d.center = {0, 0};
        d.period_samples = shapes[0].period_samples;
        d.harmonics.resize(static_cast<size_t>(order));
        for (int h = 0; h < order; ++h) {
            const double* q = centroids[j].data() + 4 * h;
            d.harmonics[static_cast<size_t>(h)] = {q[0], q[1], q[2], q[3]};
        }
        set.base_anchors.push_back(std::move(d));
    }
    return set;
}

std::vector<FourierDescriptor> tile_anchors(const AnchorSet& a) {
    if (a.base_anchors.empty()) throw EmptyProposals("anchor set has no base anchors");
    if (a.stride < 1 || a.image_w < 1 || a.image_h < 1)
        throw Error("anchor grid needs positive stride and image size");
    int nx = (a.image_w + a.stride - 1) / a.stride;
    int ny = (a.image_h + a.stride - 1) / a.stride;

    std::vector<FourierDescriptor> out;
    out.reserve(static_cast<size_t>(nx) * ny * a.base_anchors.size());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            Vec2 center{(i + 0.5) * a.stride, (j + 0.5) * a.stride};
            for (const FourierDescriptor& base : a.base_anchors) {
                FourierDescriptor d = base;
                d.center = center;
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

AssignmentResult assign(const std::vector<FourierDescriptor>& anchors,
                        const std::vector<Contour>& ground_truths,
                        const AssignConfig& cfg, int workers) {
    if (ground_truths.empty()) throw EmptyGroundTruth("no ground-truth contours");
    if (anchors.empty()) throw EmptyProposals("no anchors to assign");

    size_t na = anchors.size(), ng = ground_truths.size();
    int order = anchors[0].order();
    for (const FourierDescriptor& a : anchors)
        if (a.order() != order) throw ShapeMismatch("anchors must share one harmonic order");

    std::vector<Contour> gt_canon(ng);
    std::vector<Box> gt_box(ng);
    std::vector<FourierDescriptor> gt_desc(ng);
    for (size_t g = 0; g < ng; ++g) {
        gt_canon[g] = canonicalize(ground_truths[g]);
        gt_box[g] = bounding_box(gt_canon[g]);
        gt_desc[g] = fourier_encode(gt_canon[g], order, 360);
    }

    std::vector<Contour> a_contour(na);
    std::vector<Box> a_box(na);
    std::vector<double> iou(na * ng, 0.0);

    AssignmentResult r;
    r.labels.assign(na, AnchorLabel::Negative);
    r.matched_gt.assign(na, -1);
    r.max_iou.assign(na, 0.0);
    r.targets.resize(na);

    parallel_for(na, workers, [&](size_t i) {
        a_contour[i] = fourier_decode(anchors[i], cfg.decode_samples);
        a_box[i] = bounding_box(a_contour[i]);
        // A collapsed anchor outline overlaps nothing. Must not throw
        // here: this runs on worker threads.
        bool usable = true;
        try {
            check_contour(a_contour[i]);
        } catch (const Error&) {
            usable = false;
        }
        double best = 0.0;
        size_t best_g = 0;
        for (size_t g = 0; usable && g < ng; ++g) {
            double biou = box_iou(a_box[i], gt_box[g]);
            double v = 0.0;
            if (biou > 0.0) {
                try {
                    v = biou * polar_iou(a_contour[i], gt_canon[g]);
                } catch (const DegeneratePair&) {
                    v = 0.0;
                }
            }
            iou[i * ng + g] = v;
            if (v > best) {
                best = v;
                best_g = g;
            }
        }
        r.max_iou[i] = best;
        if (best >= cfg.pos_threshold) {
            r.labels[i] = AnchorLabel::Positive;
            r.matched_gt[i] = static_cast<int>(best_g);
            r.targets[i] = encode_targets(gt_desc[best_g], anchors[i]);
        } else if (best >= cfg.neg_threshold) {
            r.labels[i] = AnchorLabel::Ignore;
        }
    });

    if (cfg.force_match) {
        std::vector<bool> has_positive(ng, false);
        for (size_t i = 0; i < na; ++i)
            if (r.labels[i] == AnchorLabel::Positive)
                has_positive[static_cast<size_t>(r.matched_gt[i])] = true;
        for (size_t g = 0; g < ng; ++g) {
            if (has_positive[g]) continue;
            // Best anchor for this gt among those not already claimed by
            // another gt, so promotion cannot strand someone else.
            size_t best_i = na;
            double best = -1.0;
            for (size_t i = 0; i < na; ++i) {
                if (r.labels[i] == AnchorLabel::Positive) continue;
                if (iou[i * ng + g] > best) {
                    best = iou[i * ng + g];
                    best_i = i;
                }
            }
            if (best_i == na) { // every anchor positive already; take the global best
                for (size_t i = 0; i < na; ++i)
                    if (iou[i * ng + g] > best) {
                        best = iou[i * ng + g];
                        best_i = i;
                    }
            }
            r.labels[best_i] = AnchorLabel::Positive;
            r.matched_gt[best_i] = static_cast<int>(g);
            r.targets[best_i] = encode_targets(gt_desc[g], anchors[best_i]);
        }
    }
    return r;
}

} // namespace ffpn
