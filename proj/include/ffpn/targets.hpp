#pragma once

#include <vector>

#include "ffpn/descriptor.hpp"

namespace ffpn {

/// Anchor-relative regression targets: every ground-truth coefficient is
/// expressed as (gt - anchor) divided by the matching per-harmonic extent
/// of the *anchor*, so the numbers a regressor must predict stay O(1)
/// regardless of object scale. Center offsets are normalized by the
/// first-harmonic extents.
struct RegressionTargets {
    double dx = 0.0; // (G_Lx - A_Lx) / E_x_1
    double dy = 0.0; // (G_Ly - A_Ly) / E_y_1
    std::vector<Harmonic> deltas; // per level: da,db over E_x_i; dc,dd over E_y_i
};

/// Computes targets for `gt` relative to `anchor`. Both descriptors must
/// share the same order; otherwise throws ShapeMismatch.
RegressionTargets encode_targets(const FourierDescriptor& gt, const FourierDescriptor& anchor);

/// Exact inverse of encode_targets: reapplies the anchor extents and adds
/// the anchor coefficients back. decode(encode(g, a), a) == g up to
/// floating-point roundoff. Throws ShapeMismatch on order disagreement.
FourierDescriptor decode_targets(const RegressionTargets& t, const FourierDescriptor& anchor);

} // namespace ffpn
