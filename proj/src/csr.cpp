#include "ffpn/csr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "ffpn/errors.hpp"
#include "ffpn/metrics.hpp"

namespace ffpn {

namespace {

void check_proposal(const ScoredProposal& p) {
    check_descriptor(p.descriptor);
    if (!std::isfinite(p.score) || p.score < 0.0 || p.score > 1.0)
        throw Error("proposal score must be finite in [0, 1]");
}

} // namespace

std::vector<std::vector<ScoredProposal>> select_top_n(const std::vector<ScoredProposal>& proposals,
                                                      const RefineConfig& cfg) {
    if (cfg.top_n < 1) throw Error("top_n must be at least 1");
    std::map<int, std::vector<ScoredProposal>> by_class;
    for (const ScoredProposal& p : proposals) {
        check_proposal(p);
        by_class[p.class_id].push_back(p);
    }
    std::vector<std::vector<ScoredProposal>> out;
    out.reserve(by_class.size());
    for (auto& [cls, group] : by_class) {
        std::stable_sort(group.begin(), group.end(),
                         [](const ScoredProposal& a, const ScoredProposal& b) {
                             return a.score > b.score;
                         });
        if (group.size() > static_cast<size_t>(cfg.top_n)) group.resize(static_cast<size_t>(cfg.top_n));
        out.push_back(std::move(group));
    }
    return out;
}

std::vector<ScoredProposal> cluster_proposals(const std::vector<ScoredProposal>& proposals,
                                              const RefineConfig& cfg) {
    if (proposals.empty()) throw EmptyProposals("nothing to cluster");
    size_t n = proposals.size();
    for (const ScoredProposal& p : proposals) check_proposal(p);

    std::vector<Contour> outlines(n);
    for (size_t i = 0; i < n; ++i)
        outlines[i] = fourier_decode(proposals[i].descriptor, cfg.decode_samples);

    std::vector<double> iou(n * n, 1.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double v;
            try {
                v = combined_iou(outlines[i], outlines[j]);
            } catch (const Error&) {
                v = 0.0; // degenerate outline agrees with nothing
            }
            iou[i * n + j] = iou[j * n + i] = v;
        }
    }

    std::vector<size_t> agree(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (j != i && iou[i * n + j] >= cfg.cluster_iou) agree[i] += 1;

    size_t pivot = 0;
    for (size_t i = 1; i < n; ++i) {
        if (agree[i] > agree[pivot] ||
            (agree[i] == agree[pivot] && proposals[i].score > proposals[pivot].score))
            pivot = i;
    }

    if (agree[pivot] == 0) {
        // Nothing agrees with anything: fall back to the best score alone.
        size_t best = 0;
        for (size_t i = 1; i < n; ++i)
            if (proposals[i].score > proposals[best].score) best = i;
        return {proposals[best]};
    }

    std::vector<ScoredProposal> cluster;
    cluster.push_back(proposals[pivot]);
    for (size_t j = 0; j < n; ++j)
        if (j != pivot && iou[pivot * n + j] >= cfg.cluster_iou) cluster.push_back(proposals[j]);
    return cluster;
}

MergedContour merge_cluster(const std::vector<ScoredProposal>& members, const RefineConfig& cfg) {
    if (members.empty()) throw EmptyProposals("nothing to merge");
    int order = members[0].descriptor.order();
    for (const ScoredProposal& p : members) {
        check_proposal(p);
        if (p.descriptor.order() != order)
            throw ShapeMismatch("merging needs one harmonic order");
    }

    double inv = 1.0 / static_cast<double>(members.size());
    FourierDescriptor mean;
    mean.period_samples = members[0].descriptor.period_samples;
    mean.harmonics.assign(static_cast<size_t>(order), Harmonic{});
    for (const ScoredProposal& p : members) {
        mean.center = mean.center + p.descriptor.center;
        for (int h = 0; h < order; ++h) {
            const Harmonic& src = p.descriptor.harmonics[static_cast<size_t>(h)];
            Harmonic& dst = mean.harmonics[static_cast<size_t>(h)];
            dst.a += src.a;
            dst.b += src.b;
            dst.c += src.c;
            dst.d += src.d;
        }
    }
    mean.center = mean.center * inv;
    for (Harmonic& h : mean.harmonics) {
        h.a *= inv;
        h.b *= inv;
        h.c *= inv;
        h.d *= inv;
    }

    MergedContour m;
    m.descriptor = std::move(mean);
    m.member_count = static_cast<int>(members.size());
    Contour merged_outline = fourier_decode(m.descriptor, cfg.decode_samples);
    double sum = 0.0;
    for (const ScoredProposal& p : members) {
        try {
            sum += combined_iou(merged_outline, fourier_decode(p.descriptor, cfg.decode_samples));
        } catch (const Error&) {
            // degenerate member counts as zero agreement
        }
    }
    m.mean_member_iou = sum * inv;
    return m;
}

std::vector<Vec2> sample_points(const MergedContour& m, const RefineConfig& cfg) {
    if (cfg.sample_k < 3) throw InsufficientSamples("need at least 3 boundary samples");
    Contour boundary = fourier_decode(m.descriptor, cfg.sample_k);
    std::vector<Vec2> pts = std::move(boundary.points);
    pts.push_back(m.descriptor.center);
    return pts;
}

std::vector<Box> sample_boxes(const std::vector<Vec2>& points, const MergedContour& m,
                              const RefineConfig& cfg, int image_w, int image_h) {
    Box bb = bounding_box(fourier_decode(m.descriptor, cfg.decode_samples));
    double half = 0.5 * cfg.box_scale * std::max(bb.width(), bb.height());

    std::vector<Box> out;
    out.reserve(points.size());
    for (const Vec2& p : points) {
        Box b{{p.x - half, p.y - half}, {p.x + half, p.y + half}};
        if (image_w > 0 && image_h > 0) {
            b.lo.x = std::max(b.lo.x, 0.0);
            b.lo.y = std::max(b.lo.y, 0.0);
            b.hi.x = std::min(b.hi.x, static_cast<double>(image_w));
            b.hi.y = std::min(b.hi.y, static_cast<double>(image_h));
        }
        out.push_back(b);
    }
    return out;
}

RegressionTargets refine_encode(const FourierDescriptor& g, const MergedContour& m) {
    return encode_targets(g, m.descriptor);
}

FourierDescriptor refine_apply(const MergedContour& m, const RegressionTargets& d) {
    return decode_targets(d, m.descriptor);
}

} // namespace ffpn
