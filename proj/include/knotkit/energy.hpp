#pragma once

#include <string>

#include "knotkit/geometry.hpp"
#include "knotkit/kernels.hpp"

namespace knotkit {

struct EnergyReport {
    double value = 0.0;
    int n = 0;
    int diagonal_band = 0;  // number of excluded cyclic diagonals (|i-j| <= 1)
    std::string kernel_name;
};

/// Trapezoid-rule double sum of f(chord, arc) over the n x n parameter grid.
/// Cells with cyclic |i - j| <= 1 use the kernel's diagonal limit instead of
/// eval. Requires total_length == 2*pi within 1e-6 relative. Off-diagonal
/// chords below 1e-9 (near-double points) and non-finite kernel values raise
/// numerical_error.
EnergyReport total_energy(const ArcCurve& curve, const EnergyKernel& k);

/// The same double sum without the 2*pi length requirement; spacing is taken
/// from the curve itself. Used to probe scale behaviour of raw sums.
double raw_double_sum(const ArcCurve& curve, const EnergyKernel& k);

/// Off-diagonal sum over i < j only, doubled, plus the band substitution.
/// Must agree with the full sum to roundoff; exposed for the self-check.
double raw_double_sum_upper(const ArcCurve& curve, const EnergyKernel& k);

} // namespace knotkit
