#pragma once

#include <string>
#include <vector>

#include "knotkit/vec3.hpp"

namespace knotkit {

/// Closed polyline in 3-space. The edge from the last vertex back to the
/// first is implicit; this is the persistent, user-facing representation.
struct PolyKnot {
    std::vector<Vec3> vertices;
    std::string label = "knot";

    double length() const;

    /// Throws validation_error unless the knot has >= 3 vertices, all
    /// consecutive vertices distinct (> 1e-12 of total length apart) and
    /// strictly positive length.
    void validate() const;
};

/// Uniform arc-length resampling of a PolyKnot together with discrete
/// differential data. positions[i] sits at parameter t_i = i * (total_length/n).
/// Tangents are unit vectors; second_derivs carry a 3-point moving average to
/// tame second-difference noise; curvatures[i] == |second_derivs[i]|.
struct ArcCurve {
    int n = 0;
    double total_length = 0.0;
    std::vector<Vec3> positions;
    std::vector<Vec3> tangents;
    std::vector<Vec3> second_derivs;
    std::vector<double> curvatures;

    double spacing() const { return total_length / n; }
    double param(int i) const { return i * spacing(); }
};

/// Resamples the knot at n points equally spaced in arc length along the
/// polyline (linear interpolation between vertices). Rejects n < 16 and
/// degenerate knots.
ArcCurve resample_arclength(const PolyKnot& knot, int n);

/// Length of the minimal subarc between parameters t1 and t2 on a closed
/// curve of the given total length. Result in [0, total_length/2].
double arc_distance(double t1, double t2, double total_length);

/// Euclidean distance |positions[i] - positions[j]|.
double chord_length(const ArcCurve& curve, int i, int j);

/// Below this value a curvature counts as zero and the straight-segment
/// branches of psi/phi apply.
double curvature_threshold(const ArcCurve& curve);

/// Sine of the angle between the chord tau(t_i) - tau(t_i0) and the
/// osculating plane at t_i0 (mixed product of unit tangent, unit second
/// derivative and unit chord). Falls back to the scalar product of chord and
/// tangent when the curvature at i0 is below threshold. i must differ from i0.
double psi(const ArcCurve& curve, int i0, int i);

/// Sine of the angle between the chord and the plane spanned by the tangent
/// and the binormal at t_i0. Exactly zero when the curvature at i0 is below
/// threshold. i must differ from i0.
double phi(const ArcCurve& curve, int i0, int i);

/// Uniformly scaled copy (about the centroid) with total length 2*pi.
/// The applied scale factor is reported through scale_out when non-null.
PolyKnot normalized_to_2pi(const PolyKnot& knot, double* scale_out = nullptr);

} // namespace knotkit
