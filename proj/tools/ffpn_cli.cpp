// Command-line front end: encode/decode contours, fit and assign
// anchors, refine proposal clusters, score predictions, generate
// synthetic datasets and pull contours out of label masks.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffpn/anchors.hpp"
#include "ffpn/csr.hpp"
#include "ffpn/descriptor.hpp"
#include "ffpn/errors.hpp"
#include "ffpn/eval.hpp"
#include "ffpn/io.hpp"
#include "ffpn/mask.hpp"
#include "ffpn/synth.hpp"

namespace {

using nlohmann::json;

// "-" selects the standard stream; anything else opens a file.
struct InFile {
    std::ifstream file;
    std::istream* stream;

    explicit InFile(const std::string& path) {
        if (path == "-") {
            stream = &std::cin;
            return;
        }
        file.open(path, std::ios::binary);
        if (!file) throw ffpn::IoError("cannot open " + path);
        stream = &file;
    }
    std::istream& get() { return *stream; }
};

struct OutFile {
    std::ofstream file;
    std::ostream* stream;

    explicit OutFile(const std::string& path) {
        if (path == "-") {
            stream = &std::cout;
            return;
        }
        file.open(path, std::ios::binary);
        if (!file) throw ffpn::IoError("cannot open " + path);
        stream = &file;
    }
    std::ostream& get() { return *stream; }
};

json targets_json(const ffpn::RegressionTargets& t) {
    json fourier = json::array();
    for (const ffpn::Harmonic& h : t.deltas) fourier.push_back({h.a, h.b, h.c, h.d});
    return {{"loc", {t.dx, t.dy}}, {"fourier", fourier}};
}

void run_encode(const std::string& in_path, const std::string& out_path, int n, int t) {
    InFile in(in_path);
    auto contours = ffpn::read_contours(in.get());
    std::vector<ffpn::NamedDescriptor> out;
    out.reserve(contours.size());
    for (const ffpn::NamedContour& item : contours)
        out.push_back({item.id, ffpn::fourier_encode(item.contour, n, t)});
    OutFile o(out_path);
    ffpn::write_descriptors(o.get(), out);
}

void run_decode(const std::string& in_path, const std::string& out_path, int t_out) {
    InFile in(in_path);
    auto descs = ffpn::read_descriptors(in.get());
    std::vector<ffpn::NamedContour> out;
    out.reserve(descs.size());
    for (const ffpn::NamedDescriptor& item : descs)
        out.push_back({item.id, ffpn::fourier_decode(item.descriptor, t_out)});
    OutFile o(out_path);
    ffpn::write_contours(o.get(), out);
}

void run_anchors(const std::string& in_path, const std::string& out_path, int k, uint64_t seed,
                 int stride, const std::vector<int>& image_size) {
    InFile in(in_path);
    auto descs = ffpn::read_descriptors(in.get());
    std::vector<ffpn::FourierDescriptor> shapes;
    shapes.reserve(descs.size());
    for (auto& item : descs) shapes.push_back(std::move(item.descriptor));
    ffpn::AnchorSet set = ffpn::fit_anchors(shapes, k, seed);
    set.stride = stride;
    set.image_w = image_size[0];
    set.image_h = image_size[1];
    OutFile o(out_path);
    ffpn::write_anchor_set(o.get(), set);
}

void run_assign(const std::string& anchors_path, const std::string& gt_path,
                const std::string& out_path, double pos, double neg, int workers) {
    ffpn::AnchorSet set;
    {
        InFile in(anchors_path);
        set = ffpn::read_anchor_set(in.get());
    }
    std::vector<ffpn::Contour> gts;
    {
        InFile in(gt_path);
        for (auto& item : ffpn::read_contours(in.get())) gts.push_back(std::move(item.contour));
    }
    auto placed = ffpn::tile_anchors(set);
    ffpn::AssignConfig cfg;
    cfg.pos_threshold = pos;
    cfg.neg_threshold = neg;
    ffpn::AssignmentResult r = ffpn::assign(placed, gts, cfg, workers);

    size_t positives = 0, negatives = 0, ignored = 0;
    std::vector<int> per_gt(gts.size(), 0);
    json matches = json::array();
    for (size_t i = 0; i < placed.size(); ++i) {
        switch (r.labels[i]) {
        case ffpn::AnchorLabel::Positive:
            positives += 1;
            per_gt[static_cast<size_t>(r.matched_gt[i])] += 1;
            matches.push_back({{"anchor", i},
                               {"gt", r.matched_gt[i]},
                               {"iou", r.max_iou[i]},
                               {"targets", targets_json(r.targets[i])}});
            break;
        case ffpn::AnchorLabel::Negative: negatives += 1; break;
        case ffpn::AnchorLabel::Ignore: ignored += 1; break;
        }
    }
    json report = {{"anchor_count", placed.size()},
                   {"ground_truths", gts.size()},
                   {"positives", positives},
                   {"negatives", negatives},
                   {"ignored", ignored},
                   {"per_gt_positives", per_gt},
                   {"matches", matches}};
    OutFile o(out_path);
    o.get() << report.dump(2) << '\n';
}

void run_refine(const std::string& in_path, const std::string& out_path, int top_n, double iou,
                int k, double box_scale, const std::vector<int>& image_size) {
    InFile in(in_path);
    auto proposals = ffpn::read_proposals(in.get());
    ffpn::RefineConfig cfg;
    cfg.top_n = top_n;
    cfg.cluster_iou = iou;
    cfg.sample_k = k;
    cfg.box_scale = box_scale;

    json classes = json::array();
    for (const auto& group : ffpn::select_top_n(proposals, cfg)) {
        auto cluster = ffpn::cluster_proposals(group, cfg);
        ffpn::MergedContour m = ffpn::merge_cluster(cluster, cfg);
        auto points = ffpn::sample_points(m, cfg);
        auto boxes = ffpn::sample_boxes(points, m, cfg, image_size[0], image_size[1]);

        json jpoints = json::array(), jboxes = json::array();
        for (const ffpn::Vec2& p : points) jpoints.push_back({p.x, p.y});
        for (const ffpn::Box& b : boxes) jboxes.push_back({b.lo.x, b.lo.y, b.hi.x, b.hi.y});
        json jd = json::parse(ffpn::descriptor_to_json_text(m.descriptor));
        classes.push_back({{"class", group.front().class_id},
                           {"member_count", m.member_count},
                           {"mean_member_iou", m.mean_member_iou},
                           {"descriptor", jd},
                           {"points", jpoints},
                           {"boxes", jboxes}});
    }
    OutFile o(out_path);
    o.get() << json{{"classes", classes}}.dump(2) << '\n';
}

void run_metrics(const std::string& pred_path, const std::string& gt_path, int workers) {
    std::vector<ffpn::Contour> preds, gts;
    {
        InFile in(pred_path);
        for (auto& item : ffpn::read_contours(in.get())) preds.push_back(std::move(item.contour));
    }
    {
        InFile in(gt_path);
        for (auto& item : ffpn::read_contours(in.get())) gts.push_back(std::move(item.contour));
    }
    ffpn::MetricsTable t = ffpn::evaluate(preds, gts, workers);
    if (t.excluded > 0)
        std::cerr << "excluded " << t.excluded << " degenerate pair(s)\n";
    std::cout << ffpn::metrics_csv(t);
}

void run_synth(const std::string& out_path, int count, uint64_t seed, int n, double radius,
               double decay, const std::vector<int>& image_size) {
    ffpn::SynthConfig cfg;
    cfg.count = count;
    cfg.seed = seed;
    cfg.n_harmonics = n;
    cfg.base_radius = radius;
    cfg.decay_power = decay;
    cfg.image_w = image_size[0];
    cfg.image_h = image_size[1];
    auto items = ffpn::synth_dataset(cfg);
    std::vector<ffpn::NamedContour> out;
    out.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i)
        out.push_back({"synth-" + std::to_string(i), std::move(items[i].first)});
    OutFile o(out_path);
    ffpn::write_contours(o.get(), out);
}

void run_extract(const std::string& in_path, const std::string& out_path, int class_id,
                 double min_area) {
    InFile in(in_path);
    ffpn::LabelMask m = ffpn::read_pgm(in.get());
    auto contours = ffpn::extract_contours(m, class_id, min_area);
    std::vector<ffpn::NamedContour> out;
    out.reserve(contours.size());
    for (size_t i = 0; i < contours.size(); ++i)
        out.push_back({"region-" + std::to_string(i), std::move(contours[i])});
    OutFile o(out_path);
    ffpn::write_contours(o.get(), out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contour codec, anchor and refinement toolkit"};
    app.require_subcommand(1);

    std::string in_path = "-", out_path = "-";
    std::string anchors_path, gt_path, pred_path;
    std::vector<int> image_size{416, 416};
    std::vector<int> clip_size{0, 0}; // refine: 0 0 leaves boxes unclipped
    int n = 7, t = 360, t_out = 128;
    int k = 9, stride = 8, workers = 1;
    uint64_t seed = 0;
    double pos = 0.25, neg = 0.10;
    int top_n = 20, sample_k = 16;
    double cluster_iou = 0.7, box_scale = 0.2;
    int count = 1, class_id = 1;
    double radius = 50.0, decay = 2.0, min_area = 4.0;

    CLI::App* enc = app.add_subcommand("encode", "contours (JSONL) to descriptors");
    enc->add_option("-i,--input", in_path, "contour JSONL, - for stdin");
    enc->add_option("-o,--output", out_path, "descriptor JSONL, - for stdout");
    enc->add_option("--n", n, "harmonic count")->check(CLI::PositiveNumber);
    enc->add_option("--t", t, "parameter samples")->check(CLI::PositiveNumber);

    CLI::App* dec = app.add_subcommand("decode", "descriptors (JSONL) to contours");
    dec->add_option("-i,--input", in_path, "descriptor JSONL, - for stdin");
    dec->add_option("-o,--output", out_path, "contour JSONL, - for stdout");
    dec->add_option("--t-out", t_out, "vertices per contour")->check(CLI::PositiveNumber);

    CLI::App* anc = app.add_subcommand("anchors", "cluster descriptors into an anchor set");
    anc->add_option("-i,--input", in_path, "descriptor JSONL, - for stdin");
    anc->add_option("-o,--output", out_path, "anchor set JSON, - for stdout");
    anc->add_option("--k", k, "anchor count")->check(CLI::PositiveNumber);
    anc->add_option("--seed", seed, "clustering seed");
    anc->add_option("--stride", stride, "grid stride in pixels")->check(CLI::PositiveNumber);
    anc->add_option("--image-size", image_size, "image size W H")->expected(2);

    CLI::App* asg = app.add_subcommand("assign", "label anchors against ground truth");
    asg->add_option("--anchors", anchors_path, "anchor set JSON")->required();
    asg->add_option("--gt", gt_path, "ground-truth contour JSONL")->required();
    asg->add_option("-o,--output", out_path, "assignment report JSON, - for stdout");
    asg->add_option("--pos", pos, "positive overlap threshold");
    asg->add_option("--neg", neg, "negative overlap threshold");
    asg->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* ref = app.add_subcommand("refine", "cluster, merge and sample proposals");
    ref->add_option("-i,--input", in_path, "proposal JSONL, - for stdin");
    ref->add_option("-o,--output", out_path, "refinement JSON, - for stdout");
    ref->add_option("--top-n", top_n, "proposals kept per class")->check(CLI::PositiveNumber);
    ref->add_option("--iou", cluster_iou, "cluster membership overlap");
    ref->add_option("--k", sample_k, "boundary sample count")->check(CLI::PositiveNumber);
    ref->add_option("--box-scale", box_scale, "sampling-box side fraction");
    ref->add_option("--image-size", clip_size, "clip boxes to W H, 0 0 disables")->expected(2);

    CLI::App* met = app.add_subcommand("metrics", "score predictions against ground truth");
    met->add_option("--pred", pred_path, "prediction contour JSONL")->required();
    met->add_option("--gt", gt_path, "ground-truth contour JSONL")->required();
    met->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* syn = app.add_subcommand("synth", "generate a synthetic contour dataset");
    syn->add_option("-o,--output", out_path, "contour JSONL, - for stdout");
    syn->add_option("--count", count, "item count")->check(CLI::PositiveNumber);
    syn->add_option("--seed", seed, "generator seed");
    syn->add_option("--n", n, "harmonic count")->check(CLI::PositiveNumber);
    syn->add_option("--radius", radius, "base radius in pixels");
    syn->add_option("--decay", decay, "harmonic amplitude decay power");
    syn->add_option("--image-size", image_size, "image size W H")->expected(2);

    CLI::App* ext = app.add_subcommand("extract", "trace contours from a PGM label mask");
    ext->add_option("-i,--input", in_path, "binary PGM (P5), - for stdin");
    ext->add_option("-o,--output", out_path, "contour JSONL, - for stdout");
    ext->add_option("--class", class_id, "class id to trace");
    ext->add_option("--min-area", min_area, "smallest kept region in px^2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (enc->parsed()) run_encode(in_path, out_path, n, t);
        else if (dec->parsed()) run_decode(in_path, out_path, t_out);
        else if (anc->parsed()) run_anchors(in_path, out_path, k, seed, stride, image_size);
        else if (asg->parsed()) run_assign(anchors_path, gt_path, out_path, pos, neg, workers);
        else if (ref->parsed())
            run_refine(in_path, out_path, top_n, cluster_iou, sample_k, box_scale, clip_size);
        else if (met->parsed()) run_metrics(pred_path, gt_path, workers);
        else if (syn->parsed()) run_synth(out_path, count, seed, n, radius, decay, image_size);
        else if (ext->parsed()) run_extract(in_path, out_path, class_id, min_area);
    } catch (const ffpn::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ffpn::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
