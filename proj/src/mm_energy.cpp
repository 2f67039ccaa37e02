#include "knotkit/mm_energy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "knotkit/errors.hpp"
#include "knotkit/parallel.hpp"

namespace knotkit {

namespace {

struct Candidate {
    double walk_param;  // arc length from the base point, in (0, L)
    double value;       // distance from the base point
};

// Turns a walk of candidate values (monotone between neighbours, descending
// to 0 at both ends where the base sits) into the alternating extrema list.
std::vector<ExtremumRecord> extract_extrema(const std::vector<Candidate>& cands, double base,
                                            double total_length) {
    // Merge runs of exactly equal consecutive values into plateau midpoints.
    std::vector<Candidate> merged;
    merged.reserve(cands.size());
    for (size_t i = 0; i < cands.size();) {
        size_t j = i;
        while (j + 1 < cands.size() && cands[j + 1].value == cands[i].value) ++j;
        merged.push_back({0.5 * (cands[i].walk_param + cands[j].walk_param), cands[i].value});
        i = j + 1;
    }
    if (merged.size() < 2)
        throw numerical_error("degenerate distance profile: no isolated extrema");

    struct Ext {
        double walk_param;
        double value;
        bool is_max;
    };
    std::vector<Ext> ext;
    const size_t k = merged.size();
    for (size_t i = 0; i < k; ++i) {
        const double prev = (i == 0) ? 0.0 : merged[i - 1].value;           // base anchors
        const double next = (i + 1 == k) ? 0.0 : merged[i + 1].value;
        if (merged[i].value > prev && merged[i].value > next)
            ext.push_back({merged[i].walk_param, merged[i].value, true});
        else if (merged[i].value < prev && merged[i].value < next)
            ext.push_back({merged[i].walk_param, merged[i].value, false});
    }
    if (ext.empty()) throw numerical_error("degenerate distance profile: no isolated extrema");

    // Drop adjacent min/max pairs whose values are numerically indistinct,
    // merging the equal-kind neighbours this exposes.
    double global_max = 0.0;
    for (const Ext& e : ext) global_max = std::max(global_max, e.value);
    const double tiny = 1e-9 * global_max;
    bool changed = true;
    while (changed && ext.size() > 1) {
        changed = false;
        for (size_t i = 0; i + 1 < ext.size(); ++i) {
            if (ext[i].is_max != ext[i + 1].is_max &&
                std::fabs(ext[i].value - ext[i + 1].value) < tiny) {
                ext.erase(ext.begin() + i, ext.begin() + i + 2);
                changed = true;
                break;
            }
        }
        // Collapse equal-kind neighbours created by a drop: keep the more
        // extreme one (earlier walk position on ties).
        for (size_t i = 0; i + 1 < ext.size();) {
            if (ext[i].is_max == ext[i + 1].is_max) {
                const bool keep_first = ext[i].is_max ? (ext[i].value >= ext[i + 1].value)
                                                      : (ext[i].value <= ext[i + 1].value);
                ext.erase(ext.begin() + (keep_first ? i + 1 : i));
                changed = true;
            } else {
                ++i;
            }
        }
    }

    std::vector<ExtremumRecord> out;
    out.reserve(ext.size());
    for (const Ext& e : ext) {
        ExtremumRecord r;
        r.position = std::fmod(base + e.walk_param, total_length);
        r.kind = e.is_max ? ExtremumKind::Max : ExtremumKind::Min;
        r.value = e.value;
        out.push_back(r);
    }
    return out;
}

MmProfile finish_profile(std::vector<Candidate> cands, double base, double total_length) {
    MmProfile p;
    p.base = base;
    p.extrema = extract_extrema(cands, base, total_length);

    // Global maximum; ties resolved toward the smallest walk parameter.
    double best = -1.0;
    for (size_t i = 0; i < p.extrema.size(); ++i) {
        if (p.extrema[i].kind == ExtremumKind::Max && p.extrema[i].value > best) {
            best = p.extrema[i].value;
            p.global_max_index = static_cast<int>(i);
        }
    }
    if (p.global_max_index < 0) throw numerical_error("distance profile has no maximum");
    return p;
}

} // namespace

MmProfile distance_profile(const ArcCurve& curve, int i0) {
    const int n = curve.n;
    const double h = curve.spacing();
    std::vector<Candidate> cands;
    cands.reserve(n - 1);
    for (int k = 1; k < n; ++k) {
        const int j = (i0 + k) % n;
        cands.push_back({k * h, distance(curve.positions[j], curve.positions[i0])});
    }
    return finish_profile(std::move(cands), curve.param(i0), curve.total_length);
}

MmProfile distance_profile(const PolyKnot& knot, int segment, double fraction) {
    knot.validate();
    const int m = static_cast<int>(knot.vertices.size());
    if (segment < 0 || segment >= m) throw validation_error("segment index out of range");
    if (fraction < 0.0 || fraction >= 1.0) throw validation_error("fraction must lie in [0, 1)");

    const Vec3& s0 = knot.vertices[segment];
    const Vec3& s1 = knot.vertices[(segment + 1) % m];
    const Vec3 base_pt = s0 + (s1 - s0) * fraction;

    std::vector<double> edge_len(m);
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        edge_len[i] = distance(knot.vertices[i], knot.vertices[(i + 1) % m]);
        total += edge_len[i];
    }
    double base_param = 0.0;
    for (int i = 0; i < segment; ++i) base_param += edge_len[i];
    base_param += fraction * edge_len[segment];

    // Walk the polygon once, starting just after the base point. Each piece
    // is a straight segment [a, b]; the distance to base_pt is convex on it,
    // so candidates are the endpoints plus the perpendicular foot when it
    // falls strictly inside.
    std::vector<Candidate> cands;
    cands.reserve(2 * m);
    double walk = 0.0;
    auto add_piece = [&](const Vec3& a, const Vec3& b, bool include_end) {
        const Vec3 d = b - a;
        const double len = norm(d);
        if (len <= 0.0) return;
        const double t_foot = dot(base_pt - a, d) / (len * len);
        if (t_foot > 1e-12 && t_foot < 1.0 - 1e-12) {
            const double v = distance(a + d * t_foot, base_pt);
            if (v > 0.0) cands.push_back({walk + t_foot * len, v});
        }
        walk += len;
        if (include_end) cands.push_back({walk, distance(b, base_pt)});
    };

    // Partial first piece.
    add_piece(base_pt, s1, true);
    for (int k = 1; k < m; ++k) {
        const int seg = (segment + k) % m;
        const Vec3& a = knot.vertices[seg];
        const Vec3& b = knot.vertices[(seg + 1) % m];
        if (seg == segment) break;
        const bool last = ((seg + 1) % m == segment) && fraction == 0.0;
        add_piece(a, b, !last);
    }
    // Partial closing piece back to the base point.
    if (fraction > 0.0) add_piece(s0, base_pt, false);

    return finish_profile(std::move(cands), base_param, total);
}

MmProfile distance_profile(const PolyKnot& knot, int vertex) {
    return distance_profile(knot, vertex, 0.0);
}

double f_mm(const MmProfile& profile) {
    double acc = 1.0 / profile.extrema[profile.global_max_index].value;
    for (size_t i = 0; i < profile.extrema.size(); ++i) {
        if (static_cast<int>(i) == profile.global_max_index) continue;
        const ExtremumRecord& e = profile.extrema[i];
        if (e.kind == ExtremumKind::Min)
            acc += 1.0 / e.value;
        else
            acc -= 1.0 / e.value;
    }
    return acc;
}

MmReport e_mm(const PolyKnot& knot, int n_base) {
    if (n_base < 16) throw validation_error("e_mm needs at least 16 base points");
    const ObtuseReport obtuse = check_obtuse(knot);
    if (!obtuse.valid)
        throw validation_error("piecewise-linear Mm-energy needs strictly obtuse corners (" +
                               std::to_string(obtuse.violating_vertices.size()) +
                               " violating vertices)");

    const int m = static_cast<int>(knot.vertices.size());
    std::vector<double> edge_len(m);
    std::vector<double> cum(m + 1, 0.0);
    for (int i = 0; i < m; ++i) {
        edge_len[i] = distance(knot.vertices[i], knot.vertices[(i + 1) % m]);
        cum[i + 1] = cum[i] + edge_len[i];
    }
    const double L = cum[m];
    const double h = L / n_base;

    MmReport rep;
    rep.validity = true;
    rep.per_point.resize(n_base);
    std::vector<double> vals(n_base);
    parallel_for(0, n_base, [&](int k) {
        const double s = k * h;
        int seg = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin()) - 1;
        if (seg >= m) seg = m - 1;
        const double frac = (s - cum[seg]) / edge_len[seg];
        const MmProfile prof = distance_profile(knot, seg, std::min(frac, 1.0 - 1e-15));
        vals[k] = f_mm(prof);
    });
    double acc = 0.0;
    for (int k = 0; k < n_base; ++k) {
        rep.per_point[k] = {k * h, vals[k]};
        acc += vals[k];
    }
    rep.value = acc * h;
    return rep;
}

MmReport e_mm(const ArcCurve& curve) {
    const int n = curve.n;
    const double h = curve.spacing();
    MmReport rep;
    rep.validity = true;
    rep.per_point.resize(n);
    std::vector<double> vals(n);
    parallel_for(0, n, [&](int i) { vals[i] = f_mm(distance_profile(curve, i)); });
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        rep.per_point[i] = {curve.param(i), vals[i]};
        acc += vals[i];
    }
    rep.value = acc * h;
    return rep;
}

ObtuseReport check_obtuse(const PolyKnot& knot) {
    ObtuseReport rep;
    const int m = static_cast<int>(knot.vertices.size());
    for (int i = 0; i < m; ++i) {
        const Vec3 in_dir = knot.vertices[i] - knot.vertices[(i + m - 1) % m];
        const Vec3 out_dir = knot.vertices[(i + 1) % m] - knot.vertices[i];
        // Turn angle < 90 degrees <=> the segment directions keep a positive
        // scalar product. Exactly 90 degrees fails (strictness required).
        if (!(dot(in_dir, out_dir) > 0.0)) {
            rep.valid = false;
            rep.violating_vertices.push_back(i);
        }
    }
    return rep;
}

PolyKnot blowup_family_knot(double eps) {
    if (!(eps > 0.0)) throw validation_error("blowup family needs eps > 0");
    const double a = 1.5;       // strand half-length and loop radius
    const double e2 = eps / 2.0;
    PolyKnot knot;
    knot.label = "two-strand-crossing eps=" + std::to_string(eps);

    // Strand along +x at z = -eps/2.
    const int strand_pts = 6;
    for (int k = 0; k < strand_pts; ++k) {
        const double t = static_cast<double>(k) / strand_pts;
        knot.vertices.push_back({-a + 2.0 * a * t, 0.0, -e2});
    }
    // Three-quarter loop from (a, 0) to (0, a), z sweeping -eps/2 -> +eps/2.
    const int arc_pts = 27;
    for (int k = 0; k < arc_pts; ++k) {
        const double t = static_cast<double>(k) / arc_pts;
        const double th = -M_PI / 2.0 + 1.5 * M_PI * t;
        knot.vertices.push_back({a + a * std::cos(th), a + a * std::sin(th), -e2 + eps * t});
    }
    // Strand along -y at z = +eps/2, crossing the first strand above origin.
    for (int k = 0; k < strand_pts; ++k) {
        const double t = static_cast<double>(k) / strand_pts;
        knot.vertices.push_back({0.0, a - 2.0 * a * t, e2});
    }
    // Three-quarter loop from (0, -a) back to (-a, 0), z sweeping back.
    for (int k = 0; k < arc_pts; ++k) {
        const double t = static_cast<double>(k) / arc_pts;
        const double th = -1.5 * M_PI * t;
        knot.vertices.push_back({-a + a * std::cos(th), -a + a * std::sin(th), e2 - eps * t});
    }
    return knot;
}

std::vector<std::pair<double, double>> blowup_probe() {
    std::vector<std::pair<double, double>> out;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        const PolyKnot knot = blowup_family_knot(eps);
        out.emplace_back(eps, e_mm(knot, 2048).value);
    }
    return out;
}

} // namespace knotkit
