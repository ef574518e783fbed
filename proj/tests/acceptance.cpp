// Acceptance checks for the contour codec, anchor and refinement
// toolkit. Each criterion prints exactly one PASS/FAIL line; the exit
// code is the number of failures. The first argument names the CLI
// binary (FFPN_CLI works as a fallback).

#include "ffpn/anchors.hpp"
#include "ffpn/csr.hpp"
#include "ffpn/descriptor.hpp"
#include "ffpn/errors.hpp"
#include "ffpn/eval.hpp"
#include "ffpn/geometry.hpp"
#include "ffpn/io.hpp"
#include "ffpn/losses.hpp"
#include "ffpn/mask.hpp"
#include "ffpn/metrics.hpp"
#include "ffpn/synth.hpp"
#include "ffpn/targets.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ffpn;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FourierDescriptor circle_desc(double cx, double cy, double r) {
    FourierDescriptor d;
    d.center = {cx, cy};
    d.period_samples = 360;
    d.harmonics = {{0, r, r, 0}};
    return d;
}

double signed_component(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> mag(lo, hi);
    return (rng() & 1 ? 1.0 : -1.0) * mag(rng);
}

// Descriptor whose harmonic amplitudes stay far above the extent floor
// at every scale in {0.1, 1, 10}, so target normalization is floor-free.
FourierDescriptor floor_free_descriptor(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> center(-80.0, 80.0);
    FourierDescriptor d;
    d.center = {center(rng), center(rng)};
    d.period_samples = 360;
    d.harmonics.resize(static_cast<size_t>(n));
    d.harmonics[0] = {signed_component(rng, 2, 4), signed_component(rng, 2, 4),
                      signed_component(rng, 2, 4), signed_component(rng, 2, 4)};
    for (int i = 1; i < n; ++i)
        d.harmonics[static_cast<size_t>(i)] = {
            signed_component(rng, 0.3, 0.8), signed_component(rng, 0.3, 0.8),
            signed_component(rng, 0.3, 0.8), signed_component(rng, 0.3, 0.8)};
    return d;
}

double max_descriptor_diff(const FourierDescriptor& a, const FourierDescriptor& b) {
    double m = std::max(std::abs(a.center.x - b.center.x), std::abs(a.center.y - b.center.y));
    for (size_t i = 0; i < a.harmonics.size(); ++i) {
        m = std::max(m, std::abs(a.harmonics[i].a - b.harmonics[i].a));
        m = std::max(m, std::abs(a.harmonics[i].b - b.harmonics[i].b));
        m = std::max(m, std::abs(a.harmonics[i].c - b.harmonics[i].c));
        m = std::max(m, std::abs(a.harmonics[i].d - b.harmonics[i].d));
    }
    return m;
}

double max_target_diff(const RegressionTargets& a, const RegressionTargets& b) {
    double m = std::max(std::abs(a.dx - b.dx), std::abs(a.dy - b.dy));
    for (size_t i = 0; i < a.deltas.size(); ++i) {
        m = std::max(m, std::abs(a.deltas[i].a - b.deltas[i].a));
        m = std::max(m, std::abs(a.deltas[i].b - b.deltas[i].b));
        m = std::max(m, std::abs(a.deltas[i].c - b.deltas[i].c));
        m = std::max(m, std::abs(a.deltas[i].d - b.deltas[i].d));
    }
    return m;
}

FourierDescriptor scaled(const FourierDescriptor& d, double s) {
    FourierDescriptor out = d;
    out.center = {d.center.x * s, d.center.y * s};
    for (Harmonic& h : out.harmonics) {
        h.a *= s;
        h.b *= s;
        h.c *= s;
        h.d *= s;
    }
    return out;
}

Contour circle_poly(double cx, double cy, double r, int n = 360) {
    Contour c;
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * M_PI * i / n;
        c.points.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    return c;
}

// ---- criterion 1: codec exactness ---------------------------------------

void criterion_codec() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        FourierDescriptor d = floor_free_descriptor(rng, 7);
        Contour c = fourier_decode(d, 360);
        FourierDescriptor back = fourier_encode(c, 7, 360);
        worst = std::max(worst, max_descriptor_diff(d, back));
    }
    double secs = seconds_since(t0);
    bool pass = worst < 1e-9 && secs < 10.0;
    report(1, pass,
           "1000 decode/re-encode roundtrips, max coefficient error " + fmt(worst) +
               " (< 1e-9) in " + fmt(secs) + " s (< 10 s)");
}

// ---- criterion 2: target roundtrip and scale invariance ------------------

void criterion_targets() {
    std::mt19937_64 rng(2002);
    double worst_rt = 0.0, worst_scale = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        FourierDescriptor g = floor_free_descriptor(rng, 7);
        FourierDescriptor a = floor_free_descriptor(rng, 7);
        RegressionTargets t = encode_targets(g, a);
        worst_rt = std::max(worst_rt, max_descriptor_diff(decode_targets(t, a), g));
        for (double s : {0.1, 1.0, 10.0}) {
            RegressionTargets ts = encode_targets(scaled(g, s), scaled(a, s));
            worst_scale = std::max(worst_scale, max_target_diff(t, ts));
        }
    }
    bool pass = worst_rt < 1e-9 && worst_scale < 1e-9;
    report(2, pass,
           "1000 target roundtrips, max error " + fmt(worst_rt) +
               "; scale drift over s in {0.1, 1, 10} " + fmt(worst_scale) + " (both < 1e-9)");
}

// ---- criterion 3: metric oracles -----------------------------------------

void criterion_metrics() {
    double iou = combined_iou(circle_poly(0, 0, 1), circle_poly(0, 0, 2));
    bool ok_iou = std::abs(iou - 0.125) < 2e-3;

    Contour sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0};
    Contour sq_off{{{0.5, 0}, {1.5, 0}, {1.5, 1}, {0.5, 1}}, 0};
    double d_off = dice(sq, sq_off);
    bool ok_dice = std::abs(d_off - 0.5) < 1e-2;

    double hd = hausdorff(circle_poly(0, 0, 1), circle_poly(0, 0, 2));
    bool ok_hd = std::abs(hd - 1.0) < 1e-2;

    SynthConfig cfg;
    cfg.count = 100;
    cfg.seed = 33;
    NoiseConfig noise;
    noise.coeff_sigma = 0.05;
    double worst_gap = 0.0;
    for (const auto& [gt, desc] : synth_dataset(cfg)) {
        noise.seed += 1;
        Contour other = fourier_decode(simulate_proposals(desc, noise)[0].descriptor, 128);
        worst_gap = std::max(worst_gap, std::abs(dice(gt, other, 512) - dice(gt, other, 2048)));
    }
    bool ok_grid = worst_gap < 5e-3;

    report(3, ok_iou && ok_dice && ok_hd && ok_grid,
           "combined overlap of nested circles " + fmt(iou) + " (0.125 +- 2e-3), half-overlap dice " +
               fmt(d_off) + " (0.5 +- 1e-2), nested-circle boundary distance " + fmt(hd) +
               " (1.0 +- 1e-2), dice 512-vs-2048 gap " + fmt(worst_gap) + " (< 5e-3 over 100 pairs)");
}

// ---- criterion 4: loss arithmetic -----------------------------------------

void criterion_losses() {
    Contour c = circle_poly(40, 40, 12);
    double self_loss = contour_loss(c, c);
    bool ok_zero = self_loss == 0.0;

    LossConfig cfg;
    double cls = cls_loss({0.5}, {1}, cfg);
    bool ok_cls = std::abs(cls - 0.2058) < 1e-4;

    FourierDescriptor anchor = circle_desc(0, 0, 10);
    FourierDescriptor gt = circle_desc(6, -3, 11);
    FourierDescriptor pred = circle_desc(4, -1, 10.5);
    LossReport r = total_loss({0.6, 0.2, 0.8}, {1, 0, 1},
                              {encode_targets(pred, anchor), encode_targets(gt, anchor)},
                              {encode_targets(gt, anchor), encode_targets(gt, anchor)},
                              {fourier_decode(pred, 360), fourier_decode(gt, 360)},
                              {fourier_decode(gt, 360), fourier_decode(gt, 360)}, cfg);
    double gap = std::abs(r.total - (r.l_loc + r.l_fou + r.l_con + r.l_cls));
    bool ok_sum = gap < 1e-9;

    report(4, ok_zero && ok_cls && ok_sum,
           "self contour loss " + fmt(self_loss) + " (exactly 0), cls(0.5, positive) " + fmt(cls) +
               " (0.2058 +- 1e-4), report total vs component sum gap " + fmt(gap) + " (< 1e-9)");
}

// ---- criterion 5: anchor pipeline -----------------------------------------

void criterion_anchors() {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    auto jittered = [&](double r) {
        FourierDescriptor d = circle_desc(0, 0, r + u(rng));
        d.harmonics.push_back({0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng)});
        d.harmonics.push_back({0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng)});
        return d;
    };
    std::vector<FourierDescriptor> shapes;
    for (int i = 0; i < 40; ++i) shapes.push_back(jittered(50));
    for (int i = 0; i < 20; ++i) shapes.push_back(jittered(10));

    auto serialize = [](const AnchorSet& a) {
        std::ostringstream out;
        write_anchor_set(out, a);
        return out.str();
    };
    bool ok_det = serialize(fit_anchors(shapes, 2, 7)) == serialize(fit_anchors(shapes, 2, 7));

    AnchorSet set = fit_anchors(shapes, 2, 7);
    double worst_centroid = 0.0;
    auto accumulate_gap = [&](size_t lo, size_t hi, const FourierDescriptor& got) {
        for (size_t h = 0; h < 3; ++h) {
            double ma = 0, mb = 0, mc = 0, md = 0;
            for (size_t s = lo; s < hi; ++s) {
                ma += shapes[s].harmonics[h].a;
                mb += shapes[s].harmonics[h].b;
                mc += shapes[s].harmonics[h].c;
                md += shapes[s].harmonics[h].d;
            }
            double n = static_cast<double>(hi - lo);
            worst_centroid = std::max({worst_centroid, std::abs(got.harmonics[h].a - ma / n),
                                       std::abs(got.harmonics[h].b - mb / n),
                                       std::abs(got.harmonics[h].c - mc / n),
                                       std::abs(got.harmonics[h].d - md / n)});
        }
    };
    accumulate_gap(0, 40, set.base_anchors[0]);  // larger group first
    accumulate_gap(40, 60, set.base_anchors[1]);
    bool ok_means = worst_centroid < 1e-3;

    AssignConfig cfg; // thresholds 0.25 / 0.10
    cfg.force_match = false;
    std::vector<FourierDescriptor> anchors{circle_desc(50, 50, 10), circle_desc(300, 300, 10)};
    Contour gt = fourier_decode(circle_desc(50, 50, 10), 360);
    AssignmentResult r = assign(anchors, {gt}, cfg);
    bool ok_labels =
        r.labels[0] == AnchorLabel::Positive && r.labels[1] == AnchorLabel::Negative;

    report(5, ok_det && ok_means && ok_labels,
           std::string("clustering byte-identical across runs: ") + (ok_det ? "yes" : "no") +
               ", two-group centroid gap " + fmt(worst_centroid) +
               " (< 1e-3), identical anchor positive / disjoint negative at 0.25/0.10: " +
               (ok_labels ? "yes" : "no"));
}

// ---- criterion 6: consensus refinement efficacy ---------------------------

void criterion_refinement() {
    FourierDescriptor gt_desc = circle_desc(100, 100, 30);
    Contour gt = fourier_decode(gt_desc, 360);

    int wins = 0;
    const int trials = 200;
    NoiseConfig noise; // coeff_sigma 0.1, 20 proposals
    for (int trial = 0; trial < trials; ++trial) {
        noise.seed = static_cast<uint64_t>(trial);
        auto members = simulate_proposals(gt_desc, noise);
        MergedContour m = merge_cluster(members);
        double merged = dice(fourier_decode(m.descriptor, 128), gt);
        double mean_member = 0.0;
        for (const auto& p : members) mean_member += dice(fourier_decode(p.descriptor, 128), gt);
        mean_member /= static_cast<double>(members.size());
        if (merged >= mean_member) ++wins;
    }
    double win_rate = 100.0 * wins / trials;
    bool ok_wins = wins >= trials * 95 / 100;

    // Permutation invariance of the merge.
    noise.seed = 9000;
    auto members = simulate_proposals(gt_desc, noise);
    MergedContour base = merge_cluster(members);
    std::mt19937_64 rng(6006);
    double worst_perm = 0.0;
    for (int s = 0; s < 5; ++s) {
        std::shuffle(members.begin(), members.end(), rng);
        worst_perm = std::max(worst_perm, max_descriptor_diff(base.descriptor,
                                                              merge_cluster(members).descriptor));
    }
    bool ok_perm = worst_perm < 1e-12;

    RefineConfig rcfg; // sample_k 16
    size_t n_points = sample_points(merge_cluster(members), rcfg).size();
    bool ok_points = n_points == 17;

    report(6, ok_wins && ok_perm && ok_points,
           "consensus beats the mean member in " + fmt(win_rate) + "% of 200 trials (>= 95%), merge " +
               "permutation drift " + fmt(worst_perm) + " (< 1e-12), " + std::to_string(n_points) +
               " sample points at k=16 (= 17)");
}

// ---- criteria 7 and 8: the CLI end to end ----------------------------------

std::string g_cli;

int run_cli(const std::string& args) {
    return std::system((g_cli + " " + args).c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

double csv_mean(const std::string& csv, const std::string& name) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(name + ",", 0) == 0) {
            size_t c1 = line.find(',');
            size_t c2 = line.find(',', c1 + 1);
            return std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        }
    }
    return std::nan("");
}

void criterion_cli_pipeline(const std::string& dir) {
    auto t0 = std::chrono::steady_clock::now();
    bool ran = run_cli("synth --count 100 --seed 7 -o " + dir + "/gt.jsonl") == 0 &&
               run_cli("encode --n 7 -i " + dir + "/gt.jsonl -o " + dir + "/d.jsonl") == 0 &&
               run_cli("decode -i " + dir + "/d.jsonl -o " + dir + "/pred.jsonl") == 0 &&
               run_cli("metrics --pred " + dir + "/pred.jsonl --gt " + dir + "/gt.jsonl > " + dir +
                       "/metrics.csv") == 0;
    double secs = seconds_since(t0);
    if (!ran) {
        report(7, false, "CLI pipeline returned a failure exit code");
        return;
    }

    std::string csv = slurp(dir + "/metrics.csv");
    double mean_dice = csv_mean(csv, "DICE");
    double mean_hd = csv_mean(csv, "HD");

    // Mean contour diameter of the generated ground truth.
    std::ifstream gf(dir + "/gt.jsonl");
    auto gts = read_contours(gf);
    double mean_diameter = 0.0;
    for (const auto& g : gts) {
        Box b = bounding_box(g.contour);
        mean_diameter += std::max(b.width(), b.height());
    }
    mean_diameter /= static_cast<double>(gts.size());

    bool pass = mean_dice >= 99.0 && mean_hd <= 0.01 * mean_diameter && secs < 60.0;
    report(7, pass,
           "synth(100)/encode/decode/metrics: mean dice " + fmt(mean_dice) +
               "% (>= 99%), mean boundary distance " + fmt(mean_hd) + " px (<= 1% of diameter " +
               fmt(mean_diameter) + " px) in " + fmt(secs) + " s (< 60 s)");
}

void criterion_parallel_determinism(const std::string& dir) {
    bool ran =
        run_cli("synth --count 20 --seed 19 -o " + dir + "/pg.jsonl") == 0 &&
        run_cli("encode -i " + dir + "/pg.jsonl -o " + dir + "/pd.jsonl") == 0 &&
        run_cli("anchors -i " + dir + "/pd.jsonl -o " + dir + "/pa.json --k 3 --seed 5 --stride 64") == 0 &&
        run_cli("metrics --pred " + dir + "/pg.jsonl --gt " + dir + "/pg.jsonl --workers 1 > " +
                dir + "/m1.csv") == 0 &&
        run_cli("metrics --pred " + dir + "/pg.jsonl --gt " + dir + "/pg.jsonl --workers 8 > " +
                dir + "/m8.csv") == 0 &&
        run_cli("assign --anchors " + dir + "/pa.json --gt " + dir + "/pg.jsonl --workers 1 -o " +
                dir + "/a1.json") == 0 &&
        run_cli("assign --anchors " + dir + "/pa.json --gt " + dir + "/pg.jsonl --workers 8 -o " +
                dir + "/a8.json") == 0;
    if (!ran) {
        report(8, false, "CLI invocations returned a failure exit code");
        return;
    }
    bool metrics_same = slurp(dir + "/m1.csv") == slurp(dir + "/m8.csv");
    bool assign_same = slurp(dir + "/a1.json") == slurp(dir + "/a8.json");
    report(8, metrics_same && assign_same,
           std::string("1-vs-8-worker outputs byte-identical: metrics ") +
               (metrics_same ? "yes" : "no") + ", assignment " + (assign_same ? "yes" : "no"));
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        g_cli = argv[1];
    } else if (const char* env = std::getenv("FFPN_CLI")) {
        g_cli = env;
    }

    criterion_codec();
    criterion_targets();
    criterion_metrics();
    criterion_losses();
    criterion_anchors();
    criterion_refinement();

    if (g_cli.empty()) {
        report(7, false, "no CLI binary given (pass its path or set FFPN_CLI)");
        report(8, false, "no CLI binary given (pass its path or set FFPN_CLI)");
    } else {
        char tmpl[] = "/tmp/ffpn-accept-XXXXXX";
        char* dir = mkdtemp(tmpl);
        if (!dir) {
            report(7, false, "could not create a scratch directory");
            report(8, false, "could not create a scratch directory");
        } else {
            criterion_cli_pipeline(dir);
            criterion_parallel_determinism(dir);
        }
    }

    std::printf("%d of 8 criteria failed\n", g_failures);
    return g_failures;
}
