#include "doctest.h"

#include "ffpn/descriptor.hpp"
#include "ffpn/errors.hpp"
#include "ffpn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace ffpn;

namespace {

Contour sampled_circle(double cx, double cy, double r, int t_count = 360) {
    Contour c;
    c.points.reserve(t_count);
    for (int t = 0; t < t_count; ++t) {
        double a = 2.0 * M_PI * t / t_count;
        c.points.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    return c;
}

// Descriptor with a dominant first harmonic so the decoded curve is a
// well-behaved closed blob with positive area.
FourierDescriptor random_descriptor(std::mt19937_64& rng, int n = 7) {
    std::uniform_real_distribution<double> big(-5.0, 5.0);
    std::uniform_real_distribution<double> center(-100.0, 100.0);
    FourierDescriptor d;
    d.center = {center(rng), center(rng)};
    d.period_samples = 360;
    d.harmonics.resize(n);
    d.harmonics[0] = {big(rng), big(rng), big(rng), big(rng)};
    // Keep the first-harmonic amplitude comfortably large.
    auto& h1 = d.harmonics[0];
    double ax = std::hypot(h1.a, h1.b), ay = std::hypot(h1.c, h1.d);
    if (ax < 2.0) { h1.a = 0.0; h1.b = 3.0; ax = 3.0; }
    if (ay < 2.0) { h1.c = 3.0; h1.d = 0.0; ay = 3.0; }
    for (int i = 1; i < n; ++i) {
        double s = 0.3 / ((i + 1) * (i + 1));
        std::uniform_real_distribution<double> small(-s, s);
        d.harmonics[i] = {small(rng), small(rng), small(rng), small(rng)};
    }
    return d;
}

double max_coeff_diff(const FourierDescriptor& a, const FourierDescriptor& b) {
    REQUIRE(a.order() == b.order());
    double m = std::max(std::abs(a.center.x - b.center.x), std::abs(a.center.y - b.center.y));
    for (size_t i = 0; i < a.harmonics.size(); ++i) {
        m = std::max(m, std::abs(a.harmonics[i].a - b.harmonics[i].a));
        m = std::max(m, std::abs(a.harmonics[i].b - b.harmonics[i].b));
        m = std::max(m, std::abs(a.harmonics[i].c - b.harmonics[i].c));
        m = std::max(m, std::abs(a.harmonics[i].d - b.harmonics[i].d));
    }
    return m;
}

} // namespace

TEST_CASE("circle encodes into the first harmonic only") {
    // x = cx + r cos(2pi t/T), y = cy + r sin(2pi t/T) matches the series with
    // b1 = r (cos term of x) and c1 = r (sin term of y); everything else is 0.
    Contour c = sampled_circle(12.0, -7.0, 5.0);
    FourierDescriptor d = fourier_encode(c, 7, 360);
    CHECK(d.center.x == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(d.center.y == doctest::Approx(-7.0).epsilon(1e-9));
    CHECK(d.harmonics[0].b == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(d.harmonics[0].c == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(std::abs(d.harmonics[0].a) < 1e-9);
    CHECK(std::abs(d.harmonics[0].d) < 1e-9);
    for (int i = 1; i < 7; ++i) {
        CHECK(std::abs(d.harmonics[i].a) < 1e-9);
        CHECK(std::abs(d.harmonics[i].b) < 1e-9);
        CHECK(std::abs(d.harmonics[i].c) < 1e-9);
        CHECK(std::abs(d.harmonics[i].d) < 1e-9);
    }
}

TEST_CASE("axis-aligned ellipse splits into b1 and c1") {
    Contour c;
    for (int t = 0; t < 360; ++t) {
        double a = 2.0 * M_PI * t / 360.0;
        c.points.push_back({3.0 * std::cos(a), 1.5 * std::sin(a)});
    }
    FourierDescriptor d = fourier_encode(c, 3, 360);
    CHECK(d.harmonics[0].b == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(d.harmonics[0].c == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(std::abs(d.harmonics[1].b) < 1e-9);
}

TEST_CASE("analytic low-order curve is recovered exactly at minimal sampling") {
    // A curve built from 3 harmonics needs only T = 2*3+1 = 7 samples.
    FourierDescriptor src;
    src.center = {1.0, 2.0};
    src.period_samples = 7;
    src.harmonics = {{0.3, 4.0, 3.5, -0.2}, {0.05, -0.12, 0.2, 0.08}, {0.01, 0.04, -0.03, 0.02}};
    Contour c = fourier_decode(src, 7);
    FourierDescriptor back = fourier_encode(c, 3, 7);
    CHECK(max_coeff_diff(src, back) < 1e-9);
}

TEST_CASE("decode then encode is the identity within 1e-9") {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        FourierDescriptor d = random_descriptor(rng);
        Contour c = fourier_decode(d, 360);
        FourierDescriptor back = fourier_encode(c, 7, 360);
        worst = std::max(worst, max_coeff_diff(d, back));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("decode hits known points of a unit circle descriptor") {
    FourierDescriptor d;
    d.center = {0, 0};
    d.period_samples = 360;
    d.harmonics = {{0, 1, 1, 0}}; // x = cos, y = sin
    Contour c = fourier_decode(d, 4);
    REQUIRE(c.size() == 4);
    CHECK(c.points[0].x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.points[0].y == doctest::Approx(0.0));
    CHECK(c.points[1].y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.points[2].x == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c.points[3].y == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("doubling the decode resolution keeps shared samples bit-identical") {
    std::mt19937_64 rng(11);
    FourierDescriptor d = random_descriptor(rng);
    Contour lo = fourier_decode(d, 64);
    Contour hi = fourier_decode(d, 128);
    for (int i = 0; i < 64; ++i) {
        CHECK(lo.points[i].x == hi.points[2 * i].x);
        CHECK(lo.points[i].y == hi.points[2 * i].y);
    }
}

TEST_CASE("translation moves the center and nothing else") {
    std::mt19937_64 rng(3);
    FourierDescriptor d = random_descriptor(rng);
    Contour c = fourier_decode(d, 360);
    Contour moved = c;
    for (auto& p : moved.points) { p.x += 13.25; p.y -= 4.5; }
    FourierDescriptor a = fourier_encode(c, 7, 360);
    FourierDescriptor b = fourier_encode(moved, 7, 360);
    CHECK(b.center.x - a.center.x == doctest::Approx(13.25).epsilon(1e-12));
    CHECK(b.center.y - a.center.y == doctest::Approx(-4.5).epsilon(1e-12));
    b.center = a.center;
    CHECK(max_coeff_diff(a, b) < 1e-9);
}

TEST_CASE("encoding is invariant to vertex rotation and winding of the polygon") {
    // A polygon whose vertex count differs from T goes through the
    // canonical form, so the starting vertex and winding must not matter.
    Contour c;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    for (int i = 0; i < 100; ++i) {
        double a = 2.0 * M_PI * i / 100.0;
        double r = 10.0 + jitter(rng);
        c.points.push_back({r * std::cos(a), r * std::sin(a)});
    }
    FourierDescriptor base = fourier_encode(c, 5, 360);

    Contour rotated = c;
    std::rotate(rotated.points.begin(), rotated.points.begin() + 37, rotated.points.end());
    CHECK(max_coeff_diff(base, fourier_encode(rotated, 5, 360)) < 1e-9);

    Contour reversed = c;
    std::reverse(reversed.points.begin(), reversed.points.end());
    CHECK(max_coeff_diff(base, fourier_encode(reversed, 5, 360)) < 1e-9);
}

TEST_CASE("reconstruction error shrinks as harmonics are added") {
    Contour c;
    for (int i = 0; i < 128; ++i) {
        double a = 2.0 * M_PI * i / 128.0;
        double r = 10.0 + 2.0 * std::cos(3 * a) + 0.7 * std::sin(5 * a);
        c.points.push_back({r * std::cos(a), r * std::sin(a)});
    }
    Contour ref{resample(canonicalize(c), 128), 0};
    double first = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 10; ++n) {
        FourierDescriptor d = fourier_encode(ref, n, 128);
        Contour rec = fourier_decode(d, 128);
        double err = 0.0;
        for (int i = 0; i < 128; ++i) {
            double dx = ref.points[i].x - rec.points[i].x;
            double dy = ref.points[i].y - rec.points[i].y;
            err += dx * dx + dy * dy;
        }
        CHECK(err <= prev + 1e-12);
        if (n == 1) first = err;
        prev = err;
    }
    // Arc-length reparameterization is not band-limited, so the residual
    // only has to collapse, not vanish.
    CHECK(prev < 0.01 * first);
}

TEST_CASE("encode validates the sampling theorem bound") {
    Contour c = sampled_circle(0, 0, 5, 14);
    CHECK_THROWS_AS(fourier_encode(c, 7, 14), InsufficientSamples);
    CHECK_NOTHROW(fourier_encode(sampled_circle(0, 0, 5, 15), 7, 15));
    CHECK_THROWS_AS(fourier_encode(c, 0, 360), InvalidDescriptor);
}

TEST_CASE("check_descriptor rejects malformed input") {
    FourierDescriptor d;
    d.center = {0, 0};
    d.period_samples = 360;
    CHECK_THROWS_AS(check_descriptor(d), InvalidDescriptor); // no harmonics
    d.harmonics = {{0, 1, 1, 0}};
    CHECK_NOTHROW(check_descriptor(d));
    d.period_samples = 0;
    CHECK_THROWS_AS(check_descriptor(d), InvalidDescriptor);
    d.period_samples = 360;
    d.harmonics[0].b = std::nan("");
    CHECK_THROWS_AS(check_descriptor(d), InvalidDescriptor);
}

TEST_CASE("decode of an all-zero descriptor collapses to the center") {
    FourierDescriptor d;
    d.center = {5, 5};
    d.period_samples = 360;
    d.harmonics = {{0, 0, 0, 0}};
    Contour c = fourier_decode(d, 16);
    for (const auto& p : c.points) {
        CHECK(p.x == 5.0);
        CHECK(p.y == 5.0);
    }
    CHECK_THROWS_AS(check_contour(c), DegenerateContour);
}

TEST_CASE("harmonic extents are twice the amplitude with a floor") {
    FourierDescriptor d;
    d.center = {0, 0};
    d.period_samples = 360;
    d.harmonics = {{3, 4, 0, 2}, {0, 0, 0, 0}};
    HarmonicExtents e = harmonic_extents(d);
    REQUIRE(e.x.size() == 2);
    CHECK(e.x[0] == doctest::Approx(10.0)); // 2*hypot(3,4)
    CHECK(e.y[0] == doctest::Approx(4.0));  // 2*hypot(0,2)
    // Zero harmonic falls back to 1e-3 * max(1, 2*hypot(a1,b1)).
    CHECK(e.x[1] == doctest::Approx(1e-3 * 10.0));
    CHECK(e.y[1] == doctest::Approx(1e-3 * 10.0));

    // Tiny first harmonic: the floor bottoms out at 1e-3.
    FourierDescriptor tiny;
    tiny.center = {0, 0};
    tiny.period_samples = 360;
    tiny.harmonics = {{0, 0.01, 0.01, 0}, {0, 0, 0, 0}};
    HarmonicExtents et = harmonic_extents(tiny);
    CHECK(et.x[1] == doctest::Approx(1e-3));
}
