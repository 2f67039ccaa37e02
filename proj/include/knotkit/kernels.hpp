#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace knotkit {

/// Pairwise energy kernel f(rho, alpha) on U = { 0 < rho <= alpha <= pi },
/// where rho is the chord length and alpha the minimal arc distance between
/// two curve points. diagonal_limit is the limit of eval as rho -> 0 with
/// rho/alpha -> 1. Kernels whose first-derivative limits blow up on the
/// diagonal must set has_finite_variation = false; the variation module
/// refuses them.
struct EnergyKernel {
    std::string name;
    std::function<double(double, double)> eval;
    std::function<double(double, double)> d_rho;
    std::function<double(double, double)> d_alpha;
    double diagonal_limit = 0.0;
    bool has_finite_variation = true;
};

/// f = alpha^3 / rho^2 (arc cubed over chord squared).
EnergyKernel kernel_arc3_chord2();

/// f = alpha^2 / rho, the constrained charged-knot model.
EnergyKernel kernel_charged_constrained();

/// f = 1/rho^2 - 1/alpha^2. Diagonal limit 1/12; variation integrals diverge.
EnergyKernel kernel_mobius();

/// Lookup by CLI name: "arc3-chord2", "charged", "mobius". Throws on unknown names.
EnergyKernel kernel_by_name(const std::string& name);
std::vector<std::string> kernel_names();

struct ProbeResult {
    double rho = 0.0, alpha = 0.0;
    double d_rho_rel_err = 0.0;
    double d_alpha_rel_err = 0.0;
    bool pass = false;
};

struct AdmissibilityReport {
    std::vector<ProbeResult> probes;
    bool derivatives_consistent = false;
    std::vector<double> diagonal_tail;  // eval along rho = 2 sin(u/2), alpha = u, u -> 0
    bool diagonal_tail_monotone = false;
    double diagonal_limit = 0.0;
    bool pass = false;
};

/// Finite-difference consistency of d_rho / d_alpha at the probe points plus
/// a sampled approach of eval to diagonal_limit along the circular-chord ray.
/// Reports flags; never throws.
AdmissibilityReport check_admissibility(const EnergyKernel& k,
                                        const std::vector<std::pair<double, double>>& probes);

/// Default probe points (rho, alpha) in the interior of U.
std::vector<std::pair<double, double>> standard_probes();

} // namespace knotkit
