#pragma once

#include <vector>

#include "ffpn/geometry.hpp"

namespace ffpn {

/// One level of the truncated Fourier series. (a, b) drive x with
/// sin/cos respectively, (c, d) drive y the same way:
///
///   x(t) = L_x + sum_n a_n sin(2 pi n t / T) + b_n cos(2 pi n t / T)
///   y(t) = L_y + sum_n c_n sin(2 pi n t / T) + d_n cos(2 pi n t / T)
struct Harmonic {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

/// Truncated Fourier representation of a closed contour: a center
/// (L_x, L_y) plus N harmonics. `period_samples` records the T used at
/// encoding time; decoding re-periodizes to whatever sample count the
/// caller asks for, so it is metadata only.
struct FourierDescriptor {
    Vec2 center{0, 0};
    std::vector<Harmonic> harmonics;
    int period_samples = 0;

    int order() const { return static_cast<int>(harmonics.size()); }
};

/// Width (x) and height (y) of the ellipse each harmonic level traces,
/// floored away from zero so they are safe divisors.
struct HarmonicExtents {
    std::vector<double> x;
    std::vector<double> y;
};

/// Fits the truncated series to `samples` points of the contour and
/// returns the coefficients of the discrete least-squares solution:
///
///   L_x = mean(x_t)
///   a_n = (2/T) sum_t x_t sin(2 pi n t / T),  b_n likewise with cos,
///   c_n, d_n the same from y_t.
///
/// When the contour has exactly `samples` vertices they are taken as the
/// parameter samples x_t directly, which makes decode -> encode recover
/// band-limited coefficients exactly. Otherwise the contour is
/// canonicalized and resampled uniformly by arc length, which pins the
/// phase to the canonical start.
///
/// Throws InsufficientSamples when samples < 2*n_harmonics + 1 and
/// DegenerateContour for unusable input.
FourierDescriptor fourier_encode(const Contour& c, int n_harmonics, int samples = 360);

/// Evaluates the series at t = 0..samples-1 with period `samples`.
/// A descriptor with all-zero harmonics yields `samples` copies of the
/// center; downstream consumers flag that as degenerate.
/// Throws InvalidDescriptor for empty or non-finite coefficients.
Contour fourier_decode(const FourierDescriptor& d, int samples = 128);

/// Per-level extents E_x_i = max(2 sqrt(a_i^2 + b_i^2), floor) and
/// E_y_i = max(2 sqrt(c_i^2 + d_i^2), floor), with
/// floor = 1e-3 * max(1, 2 sqrt(a_1^2 + b_1^2)).
HarmonicExtents harmonic_extents(const FourierDescriptor& d);

/// Throws InvalidDescriptor unless the descriptor has >= 1 harmonic and
/// every value is finite.
void check_descriptor(const FourierDescriptor& d);

} // namespace ffpn
