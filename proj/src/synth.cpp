#include "ffpn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ffpn/errors.hpp"
#include "ffpn/metrics.hpp"

namespace ffpn {

namespace {

double uniform_unit(std::mt19937_64& rng) {
    return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

// Pushes the first-harmonic amplitude up to at least `min_amp` while
// keeping its phase; a dead harmonic gets a pure cosine (sine for y).
void enforce_amplitude(double& u, double& v, double min_amp) {
    double amp = std::hypot(u, v);
    if (amp >= min_amp) return;
    if (amp < 1e-12) {
        u = 0.0;
        v = min_amp;
        return;
    }
    double s = min_amp / amp;
    u *= s;
    v *= s;
}

} // namespace

std::vector<std::pair<Contour, FourierDescriptor>> synth_dataset(const SynthConfig& cfg) {
    if (cfg.count < 1) throw GenerationFailure("item count must be at least 1");
    if (cfg.n_harmonics < 1 || cfg.n_harmonics > 7)
        throw GenerationFailure("harmonic count must be in [1, 7]");
    if (!(cfg.base_radius > 0)) throw GenerationFailure("base radius must be positive");
    double margin = 2.0 * cfg.base_radius;
    if (cfg.image_w - 2 * margin <= 0 || cfg.image_h - 2 * margin <= 0)
        throw GenerationFailure("image too small for the base radius");

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::pair<Contour, FourierDescriptor>> out;
    out.reserve(static_cast<size_t>(cfg.count));

    for (int item = 0; item < cfg.count; ++item) {
        int rejections = 0;
        while (true) {
            if (rejections > 1000) throw GenerationFailure("rejected 1000 candidates for one item");

            // Fixed draw budget per attempt keeps the stream aligned no
            // matter where a candidate fails.
            double cx = margin + uniform_unit(rng) * (cfg.image_w - 2 * margin);
            double cy = margin + uniform_unit(rng) * (cfg.image_h - 2 * margin);
            FourierDescriptor d;
            d.center = {cx, cy};
            d.period_samples = 360;
            d.harmonics.resize(static_cast<size_t>(cfg.n_harmonics));
            for (int i = 1; i <= cfg.n_harmonics; ++i) {
                double bound = cfg.base_radius / std::pow(static_cast<double>(i), cfg.decay_power);
                Harmonic& h = d.harmonics[static_cast<size_t>(i - 1)];
                h.a = (2.0 * uniform_unit(rng) - 1.0) * bound;
                h.b = (2.0 * uniform_unit(rng) - 1.0) * bound;
                h.c = (2.0 * uniform_unit(rng) - 1.0) * bound;
                h.d = (2.0 * uniform_unit(rng) - 1.0) * bound;
            }
            enforce_amplitude(d.harmonics[0].a, d.harmonics[0].b, 0.5 * cfg.base_radius);
            enforce_amplitude(d.harmonics[0].c, d.harmonics[0].d, 0.5 * cfg.base_radius);

            Contour c = fourier_decode(d, 360);
            bool in_bounds = true;
            for (const Vec2& p : c.points) {
                if (p.x < 0 || p.y < 0 || p.x > cfg.image_w || p.y > cfg.image_h) {
                    in_bounds = false;
                    break;
                }
            }
            if (!in_bounds || !is_simple(c)) {
                ++rejections;
                continue;
            }
            out.emplace_back(std::move(c), std::move(d));
            break;
        }
    }
    return out;
}

std::vector<ScoredProposal> simulate_proposals(const FourierDescriptor& gt,
                                               const NoiseConfig& cfg) {
    check_descriptor(gt);
    if (cfg.coeff_sigma < 0 || cfg.center_sigma < 0)
        throw GenerationFailure("noise sigmas must be non-negative");
    if (cfg.proposals_per_gt < 1) throw GenerationFailure("need at least one proposal");

    const Harmonic& h1 = gt.harmonics[0];
    double amp = 0.5 * (std::hypot(h1.a, h1.b) + std::hypot(h1.c, h1.d));
    double coeff_sigma = cfg.coeff_sigma * amp;

    std::mt19937_64 rng(cfg.seed);
    // normal_distribution requires sigma > 0; zero noise skips the draws.
    std::normal_distribution<double> coeff_noise(0.0, coeff_sigma > 0 ? coeff_sigma : 1.0);
    std::normal_distribution<double> center_noise(0.0, cfg.center_sigma > 0 ? cfg.center_sigma : 1.0);

    Contour gt_outline = fourier_decode(gt, 128);
    std::vector<ScoredProposal> out;
    out.reserve(static_cast<size_t>(cfg.proposals_per_gt));
    for (int i = 0; i < cfg.proposals_per_gt; ++i) {
        ScoredProposal p;
        p.descriptor = gt;
        if (coeff_sigma > 0) {
            for (Harmonic& h : p.descriptor.harmonics) {
                h.a += coeff_noise(rng);
                h.b += coeff_noise(rng);
                h.c += coeff_noise(rng);
                h.d += coeff_noise(rng);
            }
        }
        if (cfg.center_sigma > 0) {
            p.descriptor.center.x += center_noise(rng);
            p.descriptor.center.y += center_noise(rng);
        }
        double score;
        try {
            score = combined_iou(fourier_decode(p.descriptor, 128), gt_outline);
        } catch (const Error&) {
            score = 0.0;
        }
        p.score = std::clamp(score, 0.0, 1.0);
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace ffpn
