#include "knotkit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "knotkit/energy.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/mm_energy.hpp"

namespace knotkit {

namespace {

// Deterministic splitmix64 stream; independent of platform library details.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x8c95b1f7a3d0e542ULL) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)
    // Box-Muller pair from two uniforms.
    void gauss_pair(double* g1, double* g2) {
        const double u1 = 1.0 - u01();  // (0, 1]
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        *g1 = r * std::cos(2.0 * M_PI * u2);
        *g2 = r * std::sin(2.0 * M_PI * u2);
    }
};

struct Objective {
    bool is_mm = true;
    EnergyKernel kernel;
    int kernel_samples = 128;
    int mm_base = 128;

    double eval(const PolyKnot& knot) const {
        if (is_mm) return e_mm(knot, mm_base).value;
        return total_energy(resample_arclength(knot, kernel_samples), kernel).value;
    }
};

Objective make_objective(const AnnealConfig& cfg, int vertex_count) {
    Objective obj;
    const std::string& name = cfg.objective;
    if (name == "mm") {
        obj.is_mm = true;
        obj.mm_base = cfg.mm_base_points > 0 ? cfg.mm_base_points : std::max(256, 4 * vertex_count);
    } else {
        obj.is_mm = false;
        obj.kernel = kernel_by_name(name);
        obj.kernel_samples = cfg.kernel_samples;
    }
    return obj;
}

void validate_config(const AnnealConfig& cfg) {
    if (cfg.iterations < 1) throw validation_error("iterations must be positive");
    if (cfg.cooling > 0.0 && !(cfg.cooling < 1.0)) throw validation_error("cooling must lie in (0,1)");
    if (!(cfg.step_scale > 0.0 && cfg.step_scale <= 0.5))
        throw validation_error("step_scale must lie in (0, 0.5]");
    if (cfg.kernel_samples < 16) throw validation_error("kernel_samples must be at least 16");
}

bool knot_edges_ok(const PolyKnot& knot) {
    const double min_edge = 1e-12 * 2.0 * M_PI;
    const size_t m = knot.vertices.size();
    for (size_t i = 0; i < m; ++i)
        if (distance(knot.vertices[i], knot.vertices[(i + 1) % m]) <= min_edge) return false;
    return true;
}

} // namespace

double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
    // Closest points of two segments (clamped quadratic minimization).
    const Vec3 d1 = a1 - a0;
    const Vec3 d2 = b1 - b0;
    const Vec3 r = a0 - b0;
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    double s, t;
    if (a <= 1e-30 && e <= 1e-30) return norm(r);
    if (a <= 1e-30) {
        s = 0.0;
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= 1e-30) {
            t = 0.0;
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(a0 + d1 * s, b0 + d2 * t);
}

double min_nonadjacent_distance(const PolyKnot& knot) {
    const int m = static_cast<int>(knot.vertices.size());
    double best = 1e300;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;  // cyclically adjacent
            const double d = segment_distance(knot.vertices[i], knot.vertices[(i + 1) % m],
                                              knot.vertices[j], knot.vertices[(j + 1) % m]);
            best = std::min(best, d);
        }
    }
    return best;
}

double default_clearance(int vertex_count) { return 0.02 * (2.0 * M_PI / vertex_count); }

OptimResult anneal(const PolyKnot& start, const AnnealConfig& cfg) {
    validate_config(cfg);
    PolyKnot knot = normalized_to_2pi(start);
    const int m = static_cast<int>(knot.vertices.size());
    // The guard must exceed the largest single-proposal displacement, or a
    // strand can jump across another between two states that both clear it.
    const double clearance = cfg.min_clearance > 0.0
                                 ? cfg.min_clearance
                                 : std::max(0.02, 2.5 * cfg.step_scale) * (2.0 * M_PI / m);
    const Objective obj = make_objective(cfg, m);

    if (obj.is_mm) {
        const ObtuseReport rep = check_obtuse(knot);
        if (!rep.valid) throw validation_error("anneal: start knot fails the obtuse-angle check");
    }
    if (min_nonadjacent_distance(knot) < clearance)
        throw validation_error("anneal: start knot violates the clearance guard");

    double energy = obj.eval(knot);
    if (!std::isfinite(energy)) throw numerical_error("anneal: start energy is not finite");

    PolyKnot best = knot;
    double best_energy = energy;
    double temperature = cfg.initial_temperature > 0.0 ? cfg.initial_temperature : 0.002 * energy;
    // Default cooling shrinks T by 1e-5 over the whole run, whatever its length.
    const double cooling =
        cfg.cooling > 0.0 ? cfg.cooling : std::exp(std::log(1e-5) * 100.0 / cfg.iterations);

    Rng rng(cfg.seed);
    const double sigma = cfg.step_scale * (2.0 * M_PI / m);

    OptimResult result;
    result.trace.reserve(cfg.iterations);
    result.accepted_moves = 0;

    for (long it = 0; it < cfg.iterations; ++it) {
        // fixed draw count per iteration keeps the stream aligned
        const bool bump_move = rng.u01() < 0.5;
        const int v = static_cast<int>(rng.u01() * m) % m;
        const double width_draw = rng.u01();
        double g0, g1, g2, g3;
        rng.gauss_pair(&g0, &g1);
        rng.gauss_pair(&g2, &g3);
        const double accept_u = rng.u01();

        PolyKnot cand = knot;
        Vec3 dir{g0, g1, g2};
        // Cap the displacement at half the clearance: crossing a strand in
        // one proposal would then need the end state to violate the guard,
        // so accepted moves can never change the crossing pattern.
        const double draw_len = norm(dir) * sigma;
        if (draw_len > 0.5 * clearance) dir *= 0.5 * clearance / draw_len;
        if (bump_move) {
            // Smooth windowed displacement: single-vertex spikes pay a
            // stiffness penalty that blocks travel along collective valleys,
            // so half of the proposals move a cos^2 bump of vertices
            // coherently.
            const int max_half = std::max(2, m / 8);
            const int w = 2 + static_cast<int>(width_draw * (max_half - 1));
            for (int d = -w; d <= w; ++d) {
                const double b = std::cos(M_PI * d / (2.0 * (w + 1)));
                cand.vertices[(v + d + m) % m] += dir * (sigma * b * b);
            }
        } else {
            cand.vertices[v] += dir * sigma;
        }
        cand = normalized_to_2pi(cand);

        bool ok = knot_edges_ok(cand) && min_nonadjacent_distance(cand) >= clearance;
        if (ok && obj.is_mm) ok = check_obtuse(cand).valid;
        if (ok) {
            const double cand_energy = obj.eval(cand);
            if (std::isfinite(cand_energy)) {
                const double delta = cand_energy - energy;
                if (delta <= 0.0 || accept_u < std::exp(-delta / temperature)) {
                    knot = std::move(cand);
                    energy = cand_energy;
                    ++result.accepted_moves;
                    if (energy < best_energy) {
                        best = knot;
                        best_energy = energy;
                    }
                }
            }
        }
        result.trace.emplace_back(it, energy, best_energy);
        if ((it + 1) % 100 == 0) temperature *= cooling;
    }

    result.best_knot = std::move(best);
    result.best_energy = best_energy;
    return result;
}

OptimResult descend(const PolyKnot& start, const EnergyKernel& k, int steps, double rate) {
    if (steps < 0) throw validation_error("descend: steps must be non-negative");
    if (!(rate > 0.0)) throw validation_error("descend: rate must be positive");
    const int samples = 128;

    PolyKnot knot = normalized_to_2pi(start);
    const int m = static_cast<int>(knot.vertices.size());
    const double clearance = default_clearance(m);
    if (min_nonadjacent_distance(knot) < clearance)
        throw validation_error("descend: start knot violates the clearance guard");

    auto energy_of = [&](const PolyKnot& p) {
        return total_energy(resample_arclength(normalized_to_2pi(p), samples), k).value;
    };

    double energy = energy_of(knot);
    OptimResult result;
    result.best_knot = knot;
    result.best_energy = energy;
    result.trace.emplace_back(0, energy, energy);

    const double fd_step = 1e-5 * (2.0 * M_PI / m);
    for (int step = 0; step < steps; ++step) {
        std::vector<Vec3> grad(m);
        for (int i = 0; i < m; ++i) {
            for (int c = 0; c < 3; ++c) {
                PolyKnot plus = knot, minus = knot;
                double* pp = c == 0 ? &plus.vertices[i].x : (c == 1 ? &plus.vertices[i].y : &plus.vertices[i].z);
                double* pm = c == 0 ? &minus.vertices[i].x : (c == 1 ? &minus.vertices[i].y : &minus.vertices[i].z);
                *pp += fd_step;
                *pm -= fd_step;
                const double g = (energy_of(plus) - energy_of(minus)) / (2.0 * fd_step);
                if (c == 0) grad[i].x = g;
                else if (c == 1) grad[i].y = g;
                else grad[i].z = g;
            }
        }
        // Step along -grad with the largest vertex moving rate * mean_edge,
        // backtracking until the energy decreases. The raw Hessian carries
        // modes stiff enough (~1e6) to destabilize any plain rate * grad
        // update, and backtracking also freezes the iteration at extremal
        // configurations instead of bouncing around them.
        double gmax = 0.0;
        for (const Vec3& g : grad) gmax = std::max(gmax, norm(g));
        if (gmax <= 0.0) break;
        double scale = rate * (2.0 * M_PI / m) / gmax;
        bool moved = false;
        for (int shrink = 0; shrink < 12; ++shrink, scale *= 0.5) {
            PolyKnot next = knot;
            for (int i = 0; i < m; ++i) next.vertices[i] -= grad[i] * scale;
            next = normalized_to_2pi(next);
            if (!knot_edges_ok(next) || min_nonadjacent_distance(next) < clearance) continue;
            const double next_energy = energy_of(next);
            if (next_energy < energy) {
                knot = std::move(next);
                energy = next_energy;
                moved = true;
                break;
            }
        }
        if (!moved) break;
        if (energy < result.best_energy) {
            result.best_knot = knot;
            result.best_energy = energy;
        }
        result.trace.emplace_back(step + 1, energy, result.best_energy);
    }
    ++result.accepted_moves;
    return result;
}

AnnealConfig parse_anneal_config(std::istream& in, const std::string& source_name) {
    AnnealConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error(source_name + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        std::istringstream vs(val);
        if (key == "iterations") vs >> cfg.iterations;
        else if (key == "initial_temperature") vs >> cfg.initial_temperature;
        else if (key == "cooling") vs >> cfg.cooling;
        else if (key == "step_scale") vs >> cfg.step_scale;
        else if (key == "seed") vs >> cfg.seed;
        else if (key == "min_clearance") vs >> cfg.min_clearance;
        else if (key == "objective") vs >> cfg.objective;
        else if (key == "kernel_samples") vs >> cfg.kernel_samples;
        else if (key == "mm_base_points") vs >> cfg.mm_base_points;
        else
            throw validation_error(source_name + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (vs.fail())
            throw validation_error(source_name + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
    return cfg;
}

AnnealConfig parse_anneal_config_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path);
    return parse_anneal_config(in, path);
}

} // namespace knotkit
