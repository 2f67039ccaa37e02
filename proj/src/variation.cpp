#include "knotkit/variation.hpp"

#include <cmath>
#include <functional>
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

void require_variation_ready(const ArcCurve& c, const EnergyKernel& k) {
    if (!k.has_finite_variation)
        throw validation_error("kernel '" + k.name + "' has divergent variation integrals");
    const double two_pi = 2.0 * M_PI;
    if (std::fabs(c.total_length - two_pi) > 1e-6 * two_pi)
        throw validation_error("variation requires a curve of length 2*pi");
}

double radius_at(const ArcCurve& c, int i0) {
    if (c.curvatures[i0] <= curvature_threshold(c))
        throw validation_error("straight-segment sample: V1/V2 not evaluated (1/R undefined)");
    return 1.0 / c.curvatures[i0];
}

// Integrand bundle shared by the generic kernel path and the arc3-chord2
// closed forms. `single` receives the chord, arc, R0 and Phi(t0,t); the other
// two receive (chord, arc).
struct V1Parts {
    std::function<double(double, double, double, double)> single;
    std::function<double(double, double)> pair_term;
    std::function<double(double, double)> a_term;
    double single_diag = 0.0;  // diagonal limit of f inside the single integrand
    double pair_diag = 0.0;    // diagonal limit of the pair integrand
};

V1Parts generic_parts(const EnergyKernel& k) {
    V1Parts p;
    p.single = [k](double rho, double alpha, double r0, double phiv) {
        return k.eval(rho, alpha) + r0 * phiv * k.d_rho(rho, alpha);
    };
    p.pair_term = [k](double rho, double alpha) {
        return 2.0 * k.eval(rho, alpha) + rho * k.d_rho(rho, alpha) + alpha * k.d_alpha(rho, alpha);
    };
    p.a_term = [k](double rho, double alpha) { return k.d_alpha(rho, alpha); };
    p.single_diag = k.diagonal_limit;
    p.pair_diag = 2.0 * k.diagonal_limit;
    return p;
}

V1Parts arc3_closed_parts() {
    V1Parts p;
    p.single = [](double rho, double alpha, double r0, double phiv) {
        const double a3 = alpha * alpha * alpha;
        return (a3 / (rho * rho)) * (1.0 - 2.0 * r0 * phiv / rho);
    };
    p.pair_term = [](double rho, double alpha) {
        return 3.0 * alpha * alpha * alpha / (rho * rho);
    };
    p.a_term = [](double rho, double alpha) { return 3.0 * alpha * alpha / (rho * rho); };
    return p;
}

// Middle-term double sum, independent of the base sample. Band cells carry
// the integrand's diagonal limit. Rows run in relative order and combine
// through compensated summation, so cyclically relabelling the start sample
// shifts the result only at the 1e-13 level.
double pair_sum(const ArcCurve& c, const V1Parts& parts) {
    const int n = c.n;
    const double h = c.spacing();
    std::vector<double> rows(n, 0.0);
    parallel_for(0, n, [&](int i) {
        double acc = 0.0;
        for (int k = 2; k <= n - 2; ++k) {
            int j = i + k;
            if (j >= n) j -= n;
            const double rho = chord_length(c, i, j);
            const double alpha = arc_distance(c.param(i), c.param(j), c.total_length);
            acc += parts.pair_term(rho, alpha);
        }
        rows[i] = acc;
    });
    double total = 0.0, comp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = rows[i] - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    total += 3.0 * n * parts.pair_diag;
    return total * h * h;
}

// d f/d alpha over the full grid; band cells zeroed (they are excluded from
// the A quadrature and may be singular).
std::vector<double> a_term_matrix(const ArcCurve& c, const V1Parts& parts) {
    const int n = c.n;
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    parallel_for(0, n, [&](int j) {
        double* row = &m[static_cast<size_t>(j) * n];
        for (int i = 0; i < n; ++i) {
            if (cyclic_gap(i, j, n) <= 1) continue;
            const double rho = chord_length(c, i, j);
            const double alpha = arc_distance(c.param(i), c.param(j), c.total_length);
            row[i] = parts.a_term(rho, alpha);
        }
    });
    return m;
}

// Integral of df/dalpha over A(t0) = { (t1,t2) : the minimal arc t1..t2 passes
// through t0 }. In coordinates relative to t0 this region is the pair of
// closed triangles { u1 >= 0 >= u2, u1 - u2 <= pi } and its mirror, for any
// curve, so the quadrature walks them with row/column trapezoid weights (the
// sharp membership sum converges only O(h) at the region boundary, which is
// too slow for the circle-extremality checks).
double a_integral(const ArcCurve& c, const std::vector<double>& amat, int i0) {
    const int n = c.n;
    const double h = c.spacing();
    const double x_max = n / 2.0;

    double total = 0.0;
    for (int quadrant = 0; quadrant < 2; ++quadrant) {
        // quadrant 0: u1 = +k1 h, u2 = -j h; quadrant 1 mirrored.
        auto value_at = [&](int k1, int j) -> double {
            if (k1 + j <= 1) return 0.0;  // diagonal band, |t1 - t2| <= h
            int i1, i2;
            if (quadrant == 0) {
                i1 = i0 + k1;
                if (i1 >= n) i1 -= n;
                i2 = i0 - j;
                if (i2 < 0) i2 += n;
            } else {
                i1 = i0 - k1;
                if (i1 < 0) i1 += n;
                i2 = i0 + j;
                if (i2 >= n) i2 -= n;
            }
            return amat[static_cast<size_t>(i2) * n + i1];
        };

        const int j_end = static_cast<int>(std::floor(x_max));
        std::vector<double> row_integrals(j_end + 1, 0.0);
        for (int j = 0; j <= j_end; ++j) {
            const double rowmax = x_max - j;
            if (rowmax <= 0.0) break;
            const int kk = static_cast<int>(std::floor(rowmax));
            const double frac = rowmax - kk;
            double row = 0.0;
            if (kk >= 1) {
                double acc = 0.5 * (value_at(0, j) + value_at(kk, j));
                for (int k1 = 1; k1 < kk; ++k1) acc += value_at(k1, j);
                row = acc * h;
            }
            if (frac > 0.0) {
                const double gk = value_at(kk, j);
                const double gk1 = value_at(kk + 1, j);
                row += h * (frac * gk + 0.5 * frac * frac * (gk1 - gk));
            }
            row_integrals[j] = row;
        }
        // Column trapezoid across rows; the row at u2 = -pi has zero width.
        double col = 0.5 * row_integrals[0];
        for (int j = 1; j < j_end; ++j) col += row_integrals[j];
        col += 0.5 * row_integrals[j_end];
        col *= h;
        const double col_frac = x_max - j_end;
        if (col_frac > 0.0) col += 0.5 * col_frac * h * row_integrals[j_end];
        total += col;
    }
    return total;
}

double v1_core(const ArcCurve& c, const V1Parts& parts, int i0, const std::vector<double>& amat,
               double pair_total) {
    const int n = c.n;
    const double h = c.spacing();
    const double r0 = radius_at(c, i0);

    double single = 0.0;
    for (int k = 2; k <= n - 2; ++k) {
        int i = i0 + k;
        if (i >= n) i -= n;
        const double rho = chord_length(c, i0, i);
        const double alpha = arc_distance(c.param(i0), c.param(i), c.total_length);
        single += parts.single(rho, alpha, r0, phi(c, i0, i));
    }
    const double term1 = 4.0 * (single * h + 3.0 * h * parts.single_diag);
    const double term2 = pair_total / M_PI;
    const double term3 = 2.0 * a_integral(c, amat, i0);
    return (2.0 / (3.0 * r0)) * (term1 - term2 + term3);
}

double v2_core(const ArcCurve& c, const std::function<double(double, double, double)>& integrand,
               int i0) {
    const int n = c.n;
    const double h = c.spacing();
    const double r0 = radius_at(c, i0);
    double acc = 0.0;
    for (int k = 2; k <= n - 2; ++k) {
        int i = i0 + k;
        if (i >= n) i -= n;
        const double rho = chord_length(c, i0, i);
        const double alpha = arc_distance(c.param(i0), c.param(i), c.total_length);
        acc += integrand(rho, alpha, psi(c, i0, i));
    }
    return (4.0 / (3.0 * r0)) * acc * h;
}

std::function<double(double, double, double)> generic_v2(const EnergyKernel& k) {
    return [k](double rho, double alpha, double psiv) { return k.d_rho(rho, alpha) * psiv; };
}

std::function<double(double, double, double)> arc3_closed_v2_integrand() {
    return [](double rho, double alpha, double psiv) {
        return -2.0 * (alpha * alpha * alpha) / (rho * rho * rho) * psiv;
    };
}

} // namespace

bool in_A(double t1, double t2, double t0, double total_length, double tol) {
    const double d12 = arc_distance(t1, t2, total_length);
    const double d10 = arc_distance(t1, t0, total_length);
    const double d02 = arc_distance(t0, t2, total_length);
    return std::fabs(d12 - d10 - d02) <= tol;
}

double v1_at(const ArcCurve& curve, const EnergyKernel& k, int i0) {
    require_variation_ready(curve, k);
    const V1Parts parts = generic_parts(k);
    const std::vector<double> amat = a_term_matrix(curve, parts);
    return v1_core(curve, parts, i0, amat, pair_sum(curve, parts));
}

double v2_at(const ArcCurve& curve, const EnergyKernel& k, int i0) {
    require_variation_ready(curve, k);
    return v2_core(curve, generic_v2(k), i0);
}

ResidualField residual_field(const ArcCurve& curve, const EnergyKernel& k) {
    require_variation_ready(curve, k);
    const int n = curve.n;
    const V1Parts parts = generic_parts(k);
    const std::vector<double> amat = a_term_matrix(curve, parts);
    const double pair_total = pair_sum(curve, parts);
    const auto v2_integrand = generic_v2(k);
    const double thresh = curvature_threshold(curve);

    ResidualField field;
    field.n = n;
    field.kernel_name = k.name;
    field.v1.assign(n, 0.0);
    field.v2.assign(n, 0.0);
    std::vector<char> skipped(n, 0);
    parallel_for(0, n, [&](int i0) {
        if (curve.curvatures[i0] <= thresh) {
            skipped[i0] = 1;
            return;
        }
        field.v1[i0] = v1_core(curve, parts, i0, amat, pair_total);
        field.v2[i0] = v2_core(curve, v2_integrand, i0);
    });

    const double h = curve.spacing();
    double defect = 0.0;
    for (int i = 0; i < n; ++i) {
        defect += field.v1[i] * field.v1[i] + field.v2[i] * field.v2[i];
        field.skipped += skipped[i];
    }
    field.defect = defect * h;
    return field;
}

double v1_arc3_closed(const ArcCurve& curve, int i0) {
    require_variation_ready(curve, kernel_arc3_chord2());
    const V1Parts parts = arc3_closed_parts();
    const std::vector<double> amat = a_term_matrix(curve, parts);
    return v1_core(curve, parts, i0, amat, pair_sum(curve, parts));
}

double v2_arc3_closed(const ArcCurve& curve, int i0) {
    require_variation_ready(curve, kernel_arc3_chord2());
    return v2_core(curve, arc3_closed_v2_integrand(), i0);
}

} // namespace knotkit
