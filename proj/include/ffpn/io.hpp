#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ffpn/anchors.hpp"
#include "ffpn/csr.hpp"
#include "ffpn/descriptor.hpp"
#include "ffpn/geometry.hpp"
#include "ffpn/mask.hpp"

namespace ffpn {

/// File formats. Parse errors throw IoError with a line-numbered
/// message; numbers are written with shortest round-trip formatting so
/// identical values always produce identical bytes.
///
///   contours:    JSON Lines {"id": str, "class": int, "points": [[x,y],...]}
///   descriptors: JSON {"center":[x,y], "n":int, "coeffs":[[a,b,c,d],...]},
///                one per line in JSONL collections
///   proposals:   JSON Lines {"class": int, "score": num, "descriptor": {...}}
///   anchor sets: JSON {"k", "stride", "image_size":[W,H], "anchors":[...]}
///   masks:       binary PGM (P5), pixel value = class id

struct NamedContour {
    std::string id;
    Contour contour;
};

std::vector<NamedContour> read_contours(std::istream& in);
void write_contours(std::ostream& out, const std::vector<NamedContour>& items);

// Single-object descriptor JSON (used inside other records).
FourierDescriptor descriptor_from_json_text(const std::string& text);
std::string descriptor_to_json_text(const FourierDescriptor& d);

struct NamedDescriptor {
    std::string id;
    FourierDescriptor descriptor;
};

// JSONL collection: the descriptor object plus an "id" key per line.
std::vector<NamedDescriptor> read_descriptors(std::istream& in);
void write_descriptors(std::ostream& out, const std::vector<NamedDescriptor>& items);

std::vector<ScoredProposal> read_proposals(std::istream& in);
void write_proposals(std::ostream& out, const std::vector<ScoredProposal>& items);

AnchorSet read_anchor_set(std::istream& in);
void write_anchor_set(std::ostream& out, const AnchorSet& a);

LabelMask read_pgm(std::istream& in);
void write_pgm(std::ostream& out, const LabelMask& m);

/// Shortest round-trip decimal form of a double (to_chars); "nan"/"inf"
/// never appear in valid files and are rejected on read.
std::string format_double(double v);

} // namespace ffpn
