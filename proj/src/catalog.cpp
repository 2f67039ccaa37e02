#include "knotkit/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <iterator>
#include <utility>

#include "knotkit/errors.hpp"
#include "knotkit/optimize.hpp"

namespace knotkit {

namespace {

#include "catalog_tables.inc"

PolyKnot finish(PolyKnot knot) {
    return normalized_to_2pi(knot);
}

PolyKnot resampled_polyknot(const PolyKnot& knot, int n, const std::string& label) {
    const ArcCurve c = resample_arclength(knot, n);
    PolyKnot out;
    out.label = label;
    out.vertices = c.positions;
    return out;
}

PolyKnot circle_knot(int n) {
    PolyKnot k;
    k.label = "circle";
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        k.vertices.push_back({std::cos(t), std::sin(t), 0.0});
    }
    return finish(k);
}

// Two circular arcs of equal radius and half-angle theta sharing their
// endpoints, bulging to opposite sides of the common chord. Corner turn is
// pi - 2*theta, so theta > pi/4 keeps the corners strictly obtuse.
PolyKnot two_arc_knot(double theta, int n) {
    if (!(theta > M_PI / 4.0 && theta < M_PI / 2.0))
        throw validation_error("two-arc half-angle must lie in (pi/4, pi/2)");
    PolyKnot k;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "two-arc(%.6f)", theta);
    k.label = buf;
    const int n_upper = n / 2;
    const int n_lower = n - n_upper;
    // Upper arc: center (0, -cos t), from corner (-sin t, 0) over the top.
    for (int i = 0; i < n_upper; ++i) {
        const double u = -theta + 2.0 * theta * i / n_upper;
        k.vertices.push_back({std::sin(u), std::cos(u) - std::cos(theta), 0.0});
    }
    // Lower arc: mirror image, from corner (sin t, 0) under the bottom.
    for (int i = 0; i < n_lower; ++i) {
        const double s = theta - 2.0 * theta * i / n_lower;
        k.vertices.push_back({std::sin(s), std::cos(theta) - std::cos(s), 0.0});
    }
    return finish(k);
}

PolyKnot torus_knot(int p, int q, int n) {
    if (p < 2 || q < 2 || p == q) throw validation_error("torus knot needs p, q >= 2, p != q");
    // {p,q} names an unordered class; both spellings build the same curve.
    if (p > q) std::swap(p, q);
    PolyKnot k;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "torus(%d,%d)", p, q);
    k.label = buf;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        const double r = 2.0 + std::cos(q * t);
        k.vertices.push_back({r * std::cos(p * t), r * std::sin(p * t), std::sin(q * t)});
    }
    return finish(k);
}

PolyKnot figure_eight_knot(int n) {
    PolyKnot k;
    k.label = "figure-eight";
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        const double r = 2.0 + std::cos(2.0 * t);
        k.vertices.push_back({r * std::cos(3.0 * t), r * std::sin(3.0 * t), std::sin(4.0 * t)});
    }
    return finish(k);
}

std::vector<Vec3> chaikin_round(const std::vector<Vec3>& in) {
    std::vector<Vec3> out;
    const size_t m = in.size();
    out.reserve(2 * m);
    for (size_t i = 0; i < m; ++i) {
        const Vec3& p = in[i];
        const Vec3& q = in[(i + 1) % m];
        out.push_back(p * 0.75 + q * 0.25);
        out.push_back(p * 0.25 + q * 0.75);
    }
    return out;
}

// Connected sum of two trefoil copies spliced through facing edges.
// mirror = false keeps both chiralities equal (granny), true flips the
// second factor (square knot).
PolyKnot sum_of_trefoils(bool mirror, int n) {
    const int m = 60;
    PolyKnot base = torus_knot(2, 3, m);
    const double scale = 0.45, shift = 1.8;

    std::vector<Vec3> a(m), b(m);
    for (int i = 0; i < m; ++i) {
        Vec3 v = base.vertices[i] * scale;
        a[i] = {v.x - shift, v.y, v.z};
        Vec3 w = mirror ? Vec3{v.x, v.y, -v.z} : v;
        b[i] = {w.x + shift, w.y, w.z};
    }

    auto rightmost_edge = [&](const std::vector<Vec3>& pts, bool want_max) {
        int best = 0;
        double best_x = want_max ? -1e30 : 1e30;
        for (int i = 0; i < m; ++i) {
            const double mx = 0.5 * (pts[i].x + pts[(i + 1) % m].x);
            if ((want_max && mx > best_x) || (!want_max && mx < best_x)) {
                best_x = mx;
                best = i;
            }
        }
        return best;
    };
    const int ia = rightmost_edge(a, true);
    const int jb = rightmost_edge(b, false);

    auto splice = [&](bool reverse_b) {
        std::vector<Vec3> out;
        out.reserve(2 * m);
        for (int k = 1; k <= m; ++k) out.push_back(a[(ia + k) % m]);  // a[ia+1] .. a[ia]
        if (!reverse_b)
            for (int k = 1; k <= m; ++k) out.push_back(b[(jb + k) % m]);
        else
            for (int k = 0; k < m; ++k) out.push_back(b[(jb - k + m) % m]);
        return out;
    };
    // Pick the bridge pairing whose two new edges stay farther apart.
    std::vector<Vec3> fwd = splice(false), rev = splice(true);
    auto bridge_gap = [&](const std::vector<Vec3>& c) {
        // the two splice edges are (m-1, m) and (2m-1, 0)
        return segment_distance(c[m - 1], c[m], c[2 * m - 1], c[0]);
    };
    PolyKnot k;
    k.label = mirror ? "square-knot" : "granny";
    k.vertices = chaikin_round(bridge_gap(fwd) >= bridge_gap(rev) ? fwd : rev);
    return finish(resampled_polyknot(finish(k), n, k.label));
}

PolyKnot from_table(const double (*data)[3], int count, const std::string& label, int n) {
    PolyKnot k;
    k.label = label;
    k.vertices.reserve(count);
    for (int i = 0; i < count; ++i) k.vertices.push_back({data[i][0], data[i][1], data[i][2]});
    PolyKnot out = finish(resampled_polyknot(finish(k), n, label));
    // Coarse resampling cuts corners; refuse vertex counts that let the
    // strands touch.
    if (min_nonadjacent_distance(out) < 2e-3 * 2.0 * M_PI)
        throw validation_error("preset '" + label + "' needs more vertices (strands collide at n=" +
                               std::to_string(n) + ")");
    return out;
}

bool parse_two(const std::string& name, const char* head, double* x, double* y) {
    const size_t hl = std::strlen(head);
    if (name.rfind(head, 0) != 0 || name.back() != ')') return false;
    const std::string inner = name.substr(hl, name.size() - hl - 1);
    if (y == nullptr) return std::sscanf(inner.c_str(), "%lf", x) == 1;
    return std::sscanf(inner.c_str(), "%lf,%lf", x, y) == 2;
}

} // namespace

std::vector<PresetEntry> catalog_entries() {
    return {{"circle", "unknot"},
            {"two-arc(1.047198)", "unknot"},
            {"torus(2,3)", "trefoil"},
            {"torus(2,5)", "5_1"},
            {"torus(2,7)", "7_1"},
            {"torus(3,4)", "8_19"},
            {"figure-eight", "4_1"},
            {"granny", "granny (sum of equal trefoils)"},
            {"square-knot", "square (sum of mirror trefoils)"},
            {"5_2", "5_2"},
            {"6_1", "6_1"},
            {"6_2", "6_2"},
            {"6_3", "6_3"}};
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const PresetEntry& e : catalog_entries()) names.push_back(e.name);
    return names;
}

PolyKnot build_preset(const std::string& name, int n) {
    if (n < 16) throw validation_error("preset vertex count must be at least 16");
    if (name == "circle") return circle_knot(n);
    if (name == "figure-eight") return figure_eight_knot(n);
    if (name == "granny") return sum_of_trefoils(false, n);
    if (name == "square-knot") return sum_of_trefoils(true, n);
    if (name == "5_2") return from_table(k5_2, static_cast<int>(std::size(k5_2)), "5_2", n);
    if (name == "6_1") return from_table(k6_1, static_cast<int>(std::size(k6_1)), "6_1", n);
    if (name == "6_2") return from_table(k6_2, static_cast<int>(std::size(k6_2)), "6_2", n);
    if (name == "6_3") return from_table(k6_3, static_cast<int>(std::size(k6_3)), "6_3", n);
    double x = 0, y = 0;
    if (parse_two(name, "two-arc(", &x, nullptr)) return two_arc_knot(x, n);
    if (parse_two(name, "torus(", &x, &y))
        return torus_knot(static_cast<int>(x), static_cast<int>(y), n);
    throw validation_error("unknown preset '" + name + "'");
}

} // namespace knotkit
