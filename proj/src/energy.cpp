#include "knotkit/energy.hpp"

#include <atomic>
#include <cmath>
#include <vector>

#include "knotkit/errors.hpp"
#include "knotkit/parallel.hpp"

namespace knotkit {

namespace {

int cyclic_gap(int i, int j, int n) {
    int d = i - j;
    if (d < 0) d = -d;
    return d < n - d ? d : n - d;
}

// Row sums in fixed j-order, rows combined in i-order afterwards, so the
// result does not depend on the worker count. The diagonal band |i-j| <= 1 is
// excluded; callers with the length-2*pi contract add the diagonal-limit
// substitution on top (the limit value is tied to that normalization).
double band_excluded_sum(const ArcCurve& c, const EnergyKernel& k) {
    const int n = c.n;
    const double h = c.spacing();
    const double min_chord = 1e-9;

    std::vector<double> rows(n, 0.0);
    std::atomic<bool> bad_geometry{false};
    std::atomic<bool> bad_value{false};

    parallel_for(0, n, [&](int i) {
        double acc = 0.0;
        const Vec3 pi_ = c.positions[i];
        const double ti = c.param(i);
        for (int j = 0; j < n; ++j) {
            if (cyclic_gap(i, j, n) <= 1) continue;
            const double rho = distance(pi_, c.positions[j]);
            if (rho < min_chord) {
                bad_geometry.store(true);
                return;
            }
            const double alpha = arc_distance(ti, c.param(j), c.total_length);
            const double v = k.eval(rho, alpha);
            if (!std::isfinite(v)) {
                bad_value.store(true);
                return;
            }
            acc += v;
        }
        rows[i] = acc;
    });
    if (bad_geometry.load())
        throw numerical_error("near-double-point geometry: off-diagonal chord below 1e-9");
    if (bad_value.load()) throw numerical_error("kernel produced a non-finite value off the diagonal");

    double total = 0.0;
    for (int i = 0; i < n; ++i) total += rows[i];
    return total * h * h;
}

} // namespace

double raw_double_sum(const ArcCurve& curve, const EnergyKernel& k) {
    return band_excluded_sum(curve, k);
}

double raw_double_sum_upper(const ArcCurve& curve, const EnergyKernel& k) {
    const int n = curve.n;
    const double h = curve.spacing();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (cyclic_gap(i, j, n) <= 1) continue;
            const double rho = chord_length(curve, i, j);
            const double alpha = arc_distance(curve.param(i), curve.param(j), curve.total_length);
            acc += k.eval(rho, alpha);
        }
    }
    return 2.0 * acc * h * h;
}

EnergyReport total_energy(const ArcCurve& curve, const EnergyKernel& k) {
    const double two_pi = 2.0 * M_PI;
    if (std::fabs(curve.total_length - two_pi) > 1e-6 * two_pi)
        throw validation_error("total_energy requires a curve of length 2*pi (got " +
                               std::to_string(curve.total_length) + ")");
    EnergyReport rep;
    rep.n = curve.n;
    rep.diagonal_band = 3;
    rep.kernel_name = k.name;
    const double h = curve.spacing();
    rep.value = band_excluded_sum(curve, k) + 3.0 * curve.n * k.diagonal_limit * h * h;
    return rep;
}

} // namespace knotkit
