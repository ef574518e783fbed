#include "ffpn/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"

#include "ffpn/errors.hpp"

namespace ffpn {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw IoError(what); }

[[noreturn]] void fail_line(size_t line, const std::string& what) {
    fail("line " + std::to_string(line) + ": " + what);
}

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + " must be a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(std::string(what) + " must be finite");
    return v;
}

Vec2 point_of(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) fail(std::string(what) + " must be an [x, y] pair");
    return {finite_number(j[0], what), finite_number(j[1], what)};
}

FourierDescriptor descriptor_of(const json& j) {
    if (!j.is_object()) fail("descriptor must be an object");
    if (!j.contains("center") || !j.contains("n") || !j.contains("coeffs"))
        fail("descriptor needs center, n and coeffs");
    FourierDescriptor d;
    d.center = point_of(j["center"], "center");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
        fail("n must be a positive integer");
    int n = j["n"].get<int>();
    const json& coeffs = j["coeffs"];
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n)
        fail("coeffs must hold exactly n rows");
    d.harmonics.reserve(static_cast<size_t>(n));
    for (const json& row : coeffs) {
        if (!row.is_array() || row.size() != 4) fail("each coeffs row must be [a, b, c, d]");
        d.harmonics.push_back({finite_number(row[0], "coeffs"), finite_number(row[1], "coeffs"),
                               finite_number(row[2], "coeffs"), finite_number(row[3], "coeffs")});
    }
    d.period_samples = j.value("t", 360);
    return d;
}

json descriptor_json(const FourierDescriptor& d) {
    json coeffs = json::array();
    for (const Harmonic& h : d.harmonics) coeffs.push_back({h.a, h.b, h.c, h.d});
    return {{"center", {d.center.x, d.center.y}},
            {"n", static_cast<int>(d.harmonics.size())},
            {"coeffs", coeffs}};
}

// One JSONL pass: hands each non-blank line to `consume` as parsed JSON,
// converting parse failures into line-numbered IoErrors.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& consume) {
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            fail_line(line_no, e.what());
        }
        try {
            consume(j);
        } catch (const IoError& e) {
            fail_line(line_no, e.what());
        }
    }
    if (in.bad()) fail("stream failed while reading");
}

} // namespace

std::vector<NamedContour> read_contours(std::istream& in) {
    std::vector<NamedContour> out;
    for_each_record(in, [&](const json& j) {
        if (!j.is_object() || !j.contains("points")) fail("contour record needs points");
        NamedContour item;
        item.id = j.value("id", std::string{});
        item.contour.class_id = j.value("class", 0);
        const json& pts = j["points"];
        if (!pts.is_array() || pts.size() < 3) fail("points must hold at least 3 vertices");
        item.contour.points.reserve(pts.size());
        for (const json& p : pts) item.contour.points.push_back(point_of(p, "points"));
        out.push_back(std::move(item));
    });
    return out;
}

void write_contours(std::ostream& out, const std::vector<NamedContour>& items) {
    for (const NamedContour& item : items) {
        json pts = json::array();
        for (const Vec2& p : item.contour.points) pts.push_back({p.x, p.y});
        json j = {{"id", item.id}, {"class", item.contour.class_id}, {"points", pts}};
        out << j.dump() << '\n';
    }
    if (!out) fail("stream failed while writing contours");
}

FourierDescriptor descriptor_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("descriptor: ") + e.what());
    }
    return descriptor_of(j);
}

std::string descriptor_to_json_text(const FourierDescriptor& d) {
    return descriptor_json(d).dump();
}

std::vector<NamedDescriptor> read_descriptors(std::istream& in) {
    std::vector<NamedDescriptor> out;
    for_each_record(in, [&](const json& j) {
        NamedDescriptor item;
        item.id = j.is_object() ? j.value("id", std::string{}) : std::string{};
        item.descriptor = descriptor_of(j);
        out.push_back(std::move(item));
    });
    return out;
}

void write_descriptors(std::ostream& out, const std::vector<NamedDescriptor>& items) {
    for (const NamedDescriptor& item : items) {
        json j = descriptor_json(item.descriptor);
        j["id"] = item.id;
        out << j.dump() << '\n';
    }
    if (!out) fail("stream failed while writing descriptors");
}

std::vector<ScoredProposal> read_proposals(std::istream& in) {
    std::vector<ScoredProposal> out;
    for_each_record(in, [&](const json& j) {
        if (!j.is_object() || !j.contains("descriptor") || !j.contains("score"))
            fail("proposal record needs descriptor and score");
        ScoredProposal p;
        p.class_id = j.value("class", 0);
        p.score = finite_number(j["score"], "score");
        if (p.score < 0.0 || p.score > 1.0) fail("score must lie in [0, 1]");
        p.descriptor = descriptor_of(j["descriptor"]);
        out.push_back(std::move(p));
    });
    return out;
}

void write_proposals(std::ostream& out, const std::vector<ScoredProposal>& items) {
    for (const ScoredProposal& p : items) {
        json j = {{"class", p.class_id}, {"score", p.score}, {"descriptor", descriptor_json(p.descriptor)}};
        out << j.dump() << '\n';
    }
    if (!out) fail("stream failed while writing proposals");
}

AnchorSet read_anchor_set(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        fail(std::string("anchor file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("k") || !j.contains("stride") ||
        !j.contains("image_size") || !j.contains("anchors"))
        fail("anchor file needs k, stride, image_size and anchors");
    AnchorSet a;
    if (!j["k"].is_number_integer()) fail("k must be an integer");
    if (!j["stride"].is_number_integer() || j["stride"].get<int>() < 1)
        fail("stride must be a positive integer");
    a.stride = j["stride"].get<int>();
    const json& size = j["image_size"];
    if (!size.is_array() || size.size() != 2 || !size[0].is_number_integer() ||
        !size[1].is_number_integer())
        fail("image_size must be [W, H]");
    a.image_w = size[0].get<int>();
    a.image_h = size[1].get<int>();
    for (const json& d : j["anchors"]) a.base_anchors.push_back(descriptor_of(d));
    if (j["k"].get<int>() != static_cast<int>(a.base_anchors.size()))
        fail("k disagrees with the anchor count");
    return a;
}

void write_anchor_set(std::ostream& out, const AnchorSet& a) {
    json anchors = json::array();
    for (const FourierDescriptor& d : a.base_anchors) anchors.push_back(descriptor_json(d));
    json j = {{"k", static_cast<int>(a.base_anchors.size())},
              {"stride", a.stride},
              {"image_size", {a.image_w, a.image_h}},
              {"anchors", anchors}};
    out << j.dump(2) << '\n';
    if (!out) fail("stream failed while writing the anchor set");
}

namespace {

// PGM header token, skipping whitespace and # comments.
std::string pgm_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    if (tok.empty()) fail("mask file: truncated header");
    return tok;
}

int pgm_int(std::istream& in, const char* what) {
    std::string tok = pgm_token(in);
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        fail(std::string("mask file: bad ") + what);
    return v;
}

} // namespace

LabelMask read_pgm(std::istream& in) {
    if (pgm_token(in) != "P5") fail("mask file: not binary PGM (P5)");
    LabelMask m;
    m.width = pgm_int(in, "width");
    m.height = pgm_int(in, "height");
    int maxval = pgm_int(in, "maxval");
    if (m.width < 1 || m.height < 1) fail("mask file: bad dimensions");
    if (maxval < 1 || maxval > 255) fail("mask file: only 8-bit masks supported");
    // Exactly one whitespace byte separates the header from the raster.
    m.values.resize(static_cast<size_t>(m.width) * m.height);
    in.read(reinterpret_cast<char*>(m.values.data()),
            static_cast<std::streamsize>(m.values.size()));
    if (static_cast<size_t>(in.gcount()) != m.values.size())
        fail("mask file: truncated pixel data");
    return m;
}

void write_pgm(std::ostream& out, const LabelMask& m) {
    if (m.width < 1 || m.height < 1 ||
        m.values.size() != static_cast<size_t>(m.width) * m.height)
        fail("mask dimensions disagree with the pixel buffer");
    out << "P5\n" << m.width << ' ' << m.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(m.values.data()),
              static_cast<std::streamsize>(m.values.size()));
    if (!out) fail("stream failed while writing the mask");
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) fail("number formatting failed");
    return std::string(buf, p);
}

} // namespace ffpn
