#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "knotkit/geometry.hpp"

namespace testutil {

using knotkit::PolyKnot;
using knotkit::Vec3;

inline PolyKnot circle_polygon(int m, double radius = 1.0) {
    PolyKnot k;
    k.label = "circle";
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * M_PI * i / m;
        k.vertices.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
    }
    return k;
}

inline PolyKnot ellipse_polygon(int m, double a, double b) {
    PolyKnot k;
    k.label = "ellipse";
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * M_PI * i / m;
        k.vertices.push_back({a * std::cos(t), b * std::sin(t), 0.0});
    }
    return k;
}

/// Fixed rotation (about an irrational-ish axis) plus translation.
inline PolyKnot rigid_moved(const PolyKnot& in) {
    const double c = std::cos(0.7), s = std::sin(0.7);
    const double c2 = std::cos(1.3), s2 = std::sin(1.3);
    PolyKnot out = in;
    for (Vec3& v : out.vertices) {
        const Vec3 r1{v.x, c * v.y - s * v.z, s * v.y + c * v.z};  // about x
        v = Vec3{c2 * r1.x + s2 * r1.z, r1.y, -s2 * r1.x + c2 * r1.z} + Vec3{0.4, -1.1, 2.3};
    }
    return out;
}

struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed * 0x9E3779B97F4A7C15ULL + 1) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
};

/// Smooth random closed curve: circle plus a few random Fourier modes.
inline PolyKnot random_fourier_knot(std::uint64_t seed, int m, double amplitude = 0.25) {
    TestRng rng(seed);
    const int modes = 4;
    double ax[modes], bx[modes], ay[modes], by[modes], az[modes], bz[modes];
    for (int k = 0; k < modes; ++k) {
        const double decay = amplitude / ((k + 2.0) * (k + 2.0));
        ax[k] = rng.uniform(-decay, decay);
        bx[k] = rng.uniform(-decay, decay);
        ay[k] = rng.uniform(-decay, decay);
        by[k] = rng.uniform(-decay, decay);
        az[k] = rng.uniform(-decay, decay);
        bz[k] = rng.uniform(-decay, decay);
    }
    PolyKnot knot;
    knot.label = "random";
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * M_PI * i / m;
        Vec3 v{std::cos(t), std::sin(t), 0.0};
        for (int k = 0; k < modes; ++k) {
            const double w = (k + 2.0) * t;
            v.x += ax[k] * std::cos(w) + bx[k] * std::sin(w);
            v.y += ay[k] * std::cos(w) + by[k] * std::sin(w);
            v.z += az[k] * std::cos(w) + bz[k] * std::sin(w);
        }
        knot.vertices.push_back(v);
    }
    return knot;
}

/// Adaptive Simpson quadrature (test-side oracle).
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int depth = 24) {
    auto simpson = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
    };
    std::function<double(double, double, double, int)> rec = [&](double lo, double hi, double whole,
                                                                 int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid);
        const double right = simpson(mid, hi);
        if (d <= 0 || std::fabs(left + right - whole) < 15.0 * tol) return left + right;
        return rec(lo, mid, left, d - 1) + rec(mid, hi, right, d - 1);
    };
    return rec(a, b, simpson(a, b), depth);
}

} // namespace testutil
