#pragma once

#include <utility>
#include <vector>

#include "knotkit/geometry.hpp"

namespace knotkit {

enum class ExtremumKind { Min, Max };

struct ExtremumRecord {
    double position = 0.0;  // arc-length parameter, measured from vertex/sample 0
    ExtremumKind kind = ExtremumKind::Max;
    double value = 0.0;     // chord distance from the base point
};

/// Extrema of the chordal distance rho_t0 along the curve, listed in walk
/// order from t0 to t0 + L. The base point itself (the global minimum, value
/// 0) is not stored; with it the cyclic sequence of kinds alternates, so the
/// stored list starts and ends with a maximum and has one more maximum than
/// minima.
struct MmProfile {
    double base = 0.0;
    std::vector<ExtremumRecord> extrema;
    int global_max_index = -1;
};

struct MmReport {
    double value = 0.0;
    std::vector<std::pair<double, double>> per_point;  // (t, f_mm(t))
    bool validity = true;                              // PL obtuse-angle check
};

struct ObtuseReport {
    bool valid = true;
    std::vector<int> violating_vertices;
};

/// Discrete profile over the sample grid (strict 3-point extrema, plateaus
/// merged to their midpoint, near-equal min/max pairs dropped).
MmProfile distance_profile(const ArcCurve& curve, int i0);

/// Exact piecewise-linear profile: each segment contributes its interior
/// perpendicular-foot minimum when the foot lies strictly inside; vertices
/// are classified against their neighbours. Base point given as a (segment,
/// fraction) pair; fraction in [0, 1).
MmProfile distance_profile(const PolyKnot& knot, int segment, double fraction);
MmProfile distance_profile(const PolyKnot& knot, int vertex);

/// Alternating sum of reciprocal extremal distances:
/// 1/max_value + sum over minima of 1/value - sum over non-global maxima of 1/value.
double f_mm(const MmProfile& profile);

/// Mm-energy: trapezoid quadrature of f_mm over n_base base points uniformly
/// spaced in arc length. The PolyKnot path uses exact per-segment profiles
/// and requires the obtuse-angle check to pass.
MmReport e_mm(const PolyKnot& knot, int n_base);

/// Discrete path: base points are the curve's own samples.
MmReport e_mm(const ArcCurve& curve);

/// Every vertex turn angle must stay strictly below 90 degrees (interior
/// angle strictly obtuse). Report-based; never throws.
ObtuseReport check_obtuse(const PolyKnot& knot);

/// Built-in family: two nearly straight strands crossing at distance eps,
/// closed off by two far-away loop arcs.
PolyKnot blowup_family_knot(double eps);

/// Mm-energies of the family at eps in {0.2, 0.1, 0.05, 0.025}.
std::vector<std::pair<double, double>> blowup_probe();

} // namespace knotkit
