#include "ffpn/targets.hpp"

#include "ffpn/errors.hpp"

namespace ffpn {

RegressionTargets encode_targets(const FourierDescriptor& gt, const FourierDescriptor& anchor) {
    check_descriptor(gt);
    check_descriptor(anchor);
    if (gt.order() != anchor.order())
        throw ShapeMismatch("target encoding needs equal harmonic orders");

    HarmonicExtents e = harmonic_extents(anchor);
    RegressionTargets t;
    t.dx = (gt.center.x - anchor.center.x) / e.x[0];
    t.dy = (gt.center.y - anchor.center.y) / e.y[0];
    t.deltas.resize(gt.harmonics.size());
    for (size_t i = 0; i < gt.harmonics.size(); ++i) {
        const Harmonic& g = gt.harmonics[i];
        const Harmonic& a = anchor.harmonics[i];
        t.deltas[i] = {(g.a - a.a) / e.x[i], (g.b - a.b) / e.x[i],
                       (g.c - a.c) / e.y[i], (g.d - a.d) / e.y[i]};
    }
    return t;
}

FourierDescriptor decode_targets(const RegressionTargets& t, const FourierDescriptor& anchor) {
    check_descriptor(anchor);
    if (t.deltas.size() != anchor.harmonics.size())
        throw ShapeMismatch("target decoding needs equal harmonic orders");

    HarmonicExtents e = harmonic_extents(anchor);
    FourierDescriptor g;
    g.period_samples = anchor.period_samples;
    g.center = {anchor.center.x + t.dx * e.x[0], anchor.center.y + t.dy * e.y[0]};
    g.harmonics.resize(t.deltas.size());
    for (size_t i = 0; i < t.deltas.size(); ++i) {
        const Harmonic& d = t.deltas[i];
        const Harmonic& a = anchor.harmonics[i];
        g.harmonics[i] = {a.a + d.a * e.x[i], a.b + d.b * e.x[i],
                          a.c + d.c * e.y[i], a.d + d.d * e.y[i]};
    }
    return g;
}

} // namespace ffpn
