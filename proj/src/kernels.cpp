#include "knotkit/kernels.hpp"

#include <cmath>

#include "knotkit/errors.hpp"

namespace knotkit {

EnergyKernel kernel_arc3_chord2() {
    EnergyKernel k;
    k.name = "arc3-chord2";
    k.eval = [](double rho, double alpha) { return alpha * alpha * alpha / (rho * rho); };
    k.d_rho = [](double rho, double alpha) { return -2.0 * alpha * alpha * alpha / (rho * rho * rho); };
    k.d_alpha = [](double rho, double alpha) { return 3.0 * alpha * alpha / (rho * rho); };
    k.diagonal_limit = 0.0;
    k.has_finite_variation = true;
    return k;
}

EnergyKernel kernel_charged_constrained() {
    EnergyKernel k;
    k.name = "charged";
    k.eval = [](double rho, double alpha) { return alpha * alpha / rho; };
    k.d_rho = [](double rho, double alpha) { return -alpha * alpha / (rho * rho); };
    k.d_alpha = [](double rho, double alpha) { return 2.0 * alpha / rho; };
    k.diagonal_limit = 0.0;
    k.has_finite_variation = true;
    return k;
}

EnergyKernel kernel_mobius() {
    EnergyKernel k;
    k.name = "mobius";
    k.eval = [](double rho, double alpha) { return 1.0 / (rho * rho) - 1.0 / (alpha * alpha); };
    k.d_rho = [](double rho, double) { return -2.0 / (rho * rho * rho); };
    k.d_alpha = [](double, double alpha) { return 2.0 / (alpha * alpha * alpha); };
    // 1/(4 sin^2(u/2)) - 1/u^2 -> 1/12 as u -> 0.
    k.diagonal_limit = 1.0 / 12.0;
    k.has_finite_variation = false;
    return k;
}

EnergyKernel kernel_by_name(const std::string& name) {
    if (name == "arc3-chord2") return kernel_arc3_chord2();
    if (name == "charged") return kernel_charged_constrained();
    if (name == "mobius") return kernel_mobius();
    throw validation_error("unknown kernel '" + name + "'");
}

std::vector<std::string> kernel_names() { return {"arc3-chord2", "charged", "mobius"}; }

std::vector<std::pair<double, double>> standard_probes() {
    return {{0.5, 1.0}, {1.0, 2.0}, {2.0, 3.0}};
}

AdmissibilityReport check_admissibility(const EnergyKernel& k,
                                        const std::vector<std::pair<double, double>>& probes) {
    AdmissibilityReport rep;
    rep.diagonal_limit = k.diagonal_limit;
    rep.derivatives_consistent = true;

    for (auto [rho, alpha] : probes) {
        ProbeResult pr;
        pr.rho = rho;
        pr.alpha = alpha;
        const double step = 1e-5 * alpha;
        const double fd_rho = (k.eval(rho + step, alpha) - k.eval(rho - step, alpha)) / (2.0 * step);
        const double fd_alpha = (k.eval(rho, alpha + step) - k.eval(rho, alpha - step)) / (2.0 * step);
        const double dr = k.d_rho(rho, alpha);
        const double da = k.d_alpha(rho, alpha);
        const double scale_r = std::max(std::fabs(dr), 1e-12);
        const double scale_a = std::max(std::fabs(da), 1e-12);
        pr.d_rho_rel_err = std::fabs(fd_rho - dr) / scale_r;
        pr.d_alpha_rel_err = std::fabs(fd_alpha - da) / scale_a;
        pr.pass = std::isfinite(k.eval(rho, alpha)) && pr.d_rho_rel_err < 1e-4 && pr.d_alpha_rel_err < 1e-4;
        if (!pr.pass) rep.derivatives_consistent = false;
        rep.probes.push_back(pr);
    }

    // Diagonal tail along the circle relation rho(u) = 2 sin(u/2), alpha = u.
    // Stops before 1/rho^2-style cancellation drowns the signal.
    double u = 0.5;
    for (int i = 0; i < 8; ++i) {
        rep.diagonal_tail.push_back(k.eval(2.0 * std::sin(u / 2.0), u));
        u *= 0.5;
    }
    rep.diagonal_tail_monotone = true;
    double prev_gap = std::fabs(rep.diagonal_tail.front() - k.diagonal_limit);
    for (size_t i = 1; i < rep.diagonal_tail.size(); ++i) {
        const double gap = std::fabs(rep.diagonal_tail[i] - k.diagonal_limit);
        if (gap > prev_gap + 1e-12) rep.diagonal_tail_monotone = false;
        prev_gap = gap;
    }
    rep.pass = rep.derivatives_consistent && rep.diagonal_tail_monotone;
    return rep;
}

} // namespace knotkit
