#include "knotkit/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "knotkit/errors.hpp"

namespace knotkit {

double PolyKnot::length() const {
    double L = 0.0;
    const size_t m = vertices.size();
    for (size_t i = 0; i < m; ++i) L += distance(vertices[i], vertices[(i + 1) % m]);
    return L;
}

void PolyKnot::validate() const {
    const size_t m = vertices.size();
    if (m < 3) throw validation_error("knot needs at least 3 vertices");
    const double L = length();
    if (!(L > 0.0)) throw validation_error("knot has non-positive length");
    const double min_edge = 1e-12 * L;
    for (size_t i = 0; i < m; ++i) {
        if (distance(vertices[i], vertices[(i + 1) % m]) <= min_edge)
            throw validation_error("consecutive vertices coincide at index " + std::to_string(i));
    }
}

ArcCurve resample_arclength(const PolyKnot& knot, int n) {
    if (n < 16) throw validation_error("resample count must be at least 16");
    knot.validate();

    const size_t m = knot.vertices.size();
    std::vector<double> cum(m + 1, 0.0);
    for (size_t i = 0; i < m; ++i)
        cum[i + 1] = cum[i] + distance(knot.vertices[i], knot.vertices[(i + 1) % m]);
    const double L = cum[m];

    ArcCurve c;
    c.n = n;
    c.total_length = L;
    c.positions.resize(n);
    c.tangents.resize(n);
    c.second_derivs.resize(n);
    c.curvatures.resize(n);

    size_t seg = 0;
    for (int i = 0; i < n; ++i) {
        const double s = L * i / n;
        while (seg + 1 < m && cum[seg + 1] <= s) ++seg;
        const double seg_len = cum[seg + 1] - cum[seg];
        const double f = (s - cum[seg]) / seg_len;
        const Vec3& a = knot.vertices[seg];
        const Vec3& b = knot.vertices[(seg + 1) % m];
        c.positions[i] = a + (b - a) * f;
    }

    const double h = L / n;
    std::vector<Vec3> raw_second(n);
    for (int i = 0; i < n; ++i) {
        const Vec3& prev = c.positions[(i + n - 1) % n];
        const Vec3& next = c.positions[(i + 1) % n];
        const Vec3 d = next - prev;
        const double dn = norm(d);
        if (dn < 1e-14 * L)
            throw validation_error("degenerate tangent: curve backtracks at sample " + std::to_string(i));
        c.tangents[i] = d / dn;
        raw_second[i] = (next - c.positions[i] * 2.0 + prev) / (h * h);
    }
    // 3-point moving average keeps kappa = |tau''| usable as a 1/R prefactor.
    for (int i = 0; i < n; ++i) {
        const Vec3 s = (raw_second[(i + n - 1) % n] + raw_second[i] + raw_second[(i + 1) % n]) / 3.0;
        c.second_derivs[i] = s;
        c.curvatures[i] = norm(s);
    }
    return c;
}

double arc_distance(double t1, double t2, double total_length) {
    double d = std::fmod(std::fabs(t1 - t2), total_length);
    return std::min(d, total_length - d);
}

double chord_length(const ArcCurve& curve, int i, int j) {
    return distance(curve.positions[i], curve.positions[j]);
}

double curvature_threshold(const ArcCurve& curve) {
    return 1e-6 * (2.0 * M_PI / curve.total_length);
}

double psi(const ArcCurve& curve, int i0, int i) {
    if (i == i0) throw validation_error("psi: chord undefined for i == i0");
    const Vec3 u = normalized(curve.positions[i] - curve.positions[i0]);
    const Vec3& t = curve.tangents[i0];
    if (curve.curvatures[i0] > curvature_threshold(curve)) {
        const Vec3 nrm = curve.second_derivs[i0] / curve.curvatures[i0];
        return mixed(t, nrm, u);
    }
    return dot(u, t);
}

double phi(const ArcCurve& curve, int i0, int i) {
    if (i == i0) throw validation_error("phi: chord undefined for i == i0");
    if (curve.curvatures[i0] <= curvature_threshold(curve)) return 0.0;
    const Vec3 u = normalized(curve.positions[i] - curve.positions[i0]);
    const Vec3& t = curve.tangents[i0];
    const Vec3 nrm = curve.second_derivs[i0] / curve.curvatures[i0];
    return mixed(t, u, cross(t, nrm));
}

PolyKnot normalized_to_2pi(const PolyKnot& knot, double* scale_out) {
    knot.validate();
    const double scale = 2.0 * M_PI / knot.length();
    Vec3 centroid;
    for (const Vec3& v : knot.vertices) centroid += v;
    centroid = centroid / static_cast<double>(knot.vertices.size());

    PolyKnot out;
    out.label = knot.label;
    out.vertices.reserve(knot.vertices.size());
    for (const Vec3& v : knot.vertices) out.vertices.push_back(centroid + (v - centroid) * scale);
    if (scale_out) *scale_out = scale;
    return out;
}

} // namespace knotkit
