#include "ffpn/descriptor.hpp"

#include <cmath>
#include <vector>

#include "ffpn/errors.hpp"

namespace ffpn {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool finite_descriptor(const FourierDescriptor& d) {
    if (!std::isfinite(d.center.x) || !std::isfinite(d.center.y)) return false;
    for (const Harmonic& h : d.harmonics)
        if (!std::isfinite(h.a) || !std::isfinite(h.b) || !std::isfinite(h.c) ||
            !std::isfinite(h.d))
            return false;
    return true;
}

} // namespace

void check_descriptor(const FourierDescriptor& d) {
    if (d.harmonics.empty()) throw InvalidDescriptor("descriptor needs at least one harmonic");
    if (d.period_samples < 3) throw InvalidDescriptor("descriptor period must be at least 3 samples");
    if (!finite_descriptor(d)) throw InvalidDescriptor("descriptor has non-finite values");
}

FourierDescriptor fourier_encode(const Contour& c, int n_harmonics, int samples) {
    if (n_harmonics < 1) throw InvalidDescriptor("harmonic count must be at least 1");
    if (samples < 2 * n_harmonics + 1)
        throw InsufficientSamples("need at least 2N+1 samples for N harmonics");

    // A contour that already carries exactly `samples` vertices is taken
    // as the parameter samples verbatim: this is what makes re-encoding a
    // decoded contour recover its coefficients to roundoff. Anything else
    // is canonicalized and walked by arc length.
    std::vector<Vec2> pts;
    if (c.size() == static_cast<size_t>(samples)) {
        check_contour(c);
        pts = c.points;
    } else {
        pts = resample(canonicalize(c), samples);
    }

    const double t_count = static_cast<double>(samples);
    FourierDescriptor d;
    d.period_samples = samples;
    d.harmonics.resize(static_cast<size_t>(n_harmonics));

    double sum_x = 0.0, sum_y = 0.0;
    for (const Vec2& p : pts) {
        sum_x += p.x;
        sum_y += p.y;
    }
    d.center = {sum_x / t_count, sum_y / t_count};

    // Discrete projection: a_n = (2/T) sum_t x_t sin(2 pi n t / T), etc.
    // The angle is computed as 2 pi * (n * (t / T)) so decode at T and at
    // 2T restricted to even t evaluate bit-identical trigonometry.
    for (int n = 1; n <= n_harmonics; ++n) {
        double a = 0.0, b = 0.0, cc = 0.0, dd = 0.0;
        for (int t = 0; t < samples; ++t) {
            double frac = static_cast<double>(t) / t_count;
            double ang = kTwoPi * (static_cast<double>(n) * frac);
            double s = std::sin(ang), co = std::cos(ang);
            a += pts[static_cast<size_t>(t)].x * s;
            b += pts[static_cast<size_t>(t)].x * co;
            cc += pts[static_cast<size_t>(t)].y * s;
            dd += pts[static_cast<size_t>(t)].y * co;
        }
        Harmonic& h = d.harmonics[static_cast<size_t>(n - 1)];
        h.a = 2.0 * a / t_count;
        h.b = 2.0 * b / t_count;
        h.c = 2.0 * cc / t_count;
        h.d = 2.0 * dd / t_count;
    }
    return d;
}

Contour fourier_decode(const FourierDescriptor& d, int samples) {
    check_descriptor(d);
    if (samples < 3) throw InsufficientSamples("decode needs at least 3 points");

    Contour c;
    c.points.resize(static_cast<size_t>(samples));
    const double t_count = static_cast<double>(samples);
    for (int t = 0; t < samples; ++t) {
        double x = d.center.x, y = d.center.y;
        double frac = static_cast<double>(t) / t_count;
        for (size_t n = 1; n <= d.harmonics.size(); ++n) {
            double ang = kTwoPi * (static_cast<double>(n) * frac);
            double s = std::sin(ang), co = std::cos(ang);
            const Harmonic& h = d.harmonics[n - 1];
            x += h.a * s + h.b * co;
            y += h.c * s + h.d * co;
        }
        c.points[static_cast<size_t>(t)] = {x, y};
    }
    return c;
}

HarmonicExtents harmonic_extents(const FourierDescriptor& d) {
    check_descriptor(d);
    const Harmonic& h1 = d.harmonics[0];
    double floor_val = 1e-3 * std::max(1.0, 2.0 * std::hypot(h1.a, h1.b));
    HarmonicExtents e;
    e.x.reserve(d.harmonics.size());
    e.y.reserve(d.harmonics.size());
    for (const Harmonic& h : d.harmonics) {
        e.x.push_back(std::max(2.0 * std::hypot(h.a, h.b), floor_val));
        e.y.push_back(std::max(2.0 * std::hypot(h.c, h.d), floor_val));
    }
    return e;
}

} // namespace ffpn
