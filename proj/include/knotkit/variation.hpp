#pragma once

#include <string>
#include <vector>

#include "knotkit/energy.hpp"
#include "knotkit/geometry.hpp"
#include "knotkit/kernels.hpp"

namespace knotkit {

/// Per-sample extremality residuals V1, V2 and the aggregate defect
/// h * sum_i (v1[i]^2 + v2[i]^2). Samples whose curvature falls below the
/// straight-segment threshold are skipped (residuals recorded as 0).
struct ResidualField {
    int n = 0;
    std::vector<double> v1;
    std::vector<double> v2;
    double defect = 0.0;
    std::string kernel_name;
    int skipped = 0;
};

/// True iff the minimal arc between t1 and t2 passes through t0, i.e.
/// |D(t1,t2) - D(t1,t0) - D(t0,t2)| <= tol. Parameters taken modulo the
/// total length.
bool in_A(double t1, double t2, double t0, double total_length, double tol);

/// First variational residual of the base sample i0:
///   V1 = (2 / (3 R0)) * [ 4 * Int( f + R0 * Phi * df/drho )
///                         - (1/pi) * DblInt( 2f + rho * df/drho + alpha * df/dalpha )
///                         + 2 * DblInt_A( df/dalpha ) ],
/// all kernel arguments (rho, alpha) = (chord, arc). Diagonal bands excluded
/// with the kernel's diagonal-limit substitution; the A integral uses
/// boundary-weighted trapezoid quadrature over the region. Requires a kernel
/// with finite variation, a 2*pi curve, and curvature above threshold at i0.
double v1_at(const ArcCurve& curve, const EnergyKernel& k, int i0);

/// Second residual: V2 = (4 / (3 R0)) * Int( df/drho * Psi ).
double v2_at(const ArcCurve& curve, const EnergyKernel& k, int i0);

/// V1 and V2 at every sample plus the defect. Low-curvature samples are
/// counted in `skipped` and contribute zero.
ResidualField residual_field(const ArcCurve& curve, const EnergyKernel& k);

/// Specialized closed forms for f = alpha^3 / rho^2, algebraically
/// pre-substituted but evaluated through the same quadrature core, so they
/// match v1_at / v2_at with kernel_arc3_chord2 to roundoff.
double v1_arc3_closed(const ArcCurve& curve, int i0);
double v2_arc3_closed(const ArcCurve& curve, int i0);

} // namespace knotkit
