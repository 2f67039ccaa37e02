#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "knotkit/geometry.hpp"
#include "knotkit/kernels.hpp"

namespace knotkit {

struct AnnealConfig {
    long iterations = 50000;
    double initial_temperature = -1.0;  // < 0: 0.2% of the start energy
    double cooling = -1.0;              // <= 0: matched to iterations, 10^(-500/iterations)
    double step_scale = 0.10;           // Gaussian step as a fraction of the mean edge
    std::uint64_t seed = 0;
    double min_clearance = -1.0;        // < 0: max(0.02, 2.5*step_scale) * (2*pi / vertex count)
    std::string objective = "mm";       // "mm" or a kernel name
    int kernel_samples = 128;           // resample grid for E_f objectives
    int mm_base_points = 0;             // 0: max(256, 4 * vertex count)
};

struct OptimResult {
    PolyKnot best_knot;
    double best_energy = 0.0;
    std::vector<std::tuple<long, double, double>> trace;  // (iteration, current, best)
    long accepted_moves = 0;
};

/// Minimum distance between a segment pair.
double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1);

/// Minimum distance over all non-adjacent segment pairs of the closed polyline.
double min_nonadjacent_distance(const PolyKnot& knot);

double default_clearance(int vertex_count);

/// Simulated annealing over Gaussian vertex moves: half the proposals
/// displace one vertex, half displace a smooth cos^2 window of vertices
/// coherently (single-vertex spikes alone cannot travel along collective
/// descent directions). Every proposal is rescaled back to length 2*pi;
/// proposals breaking the clearance guard (or the obtuse check, for the mm
/// objective) are rejected. Deterministic for a fixed seed.
OptimResult anneal(const PolyKnot& start, const AnnealConfig& cfg);

/// Finite-difference gradient descent on total_energy for smooth kernels.
/// Central differences with step 1e-5 * mean edge; each step moves along the
/// negative gradient with the largest vertex displaced by rate * mean_edge,
/// backtracking (and finally stopping) when no decrease is found, with every
/// update rescaled to length 2*pi under the clearance guard.
OptimResult descend(const PolyKnot& start, const EnergyKernel& k, int steps, double rate);

/// key=value lines mirroring the AnnealConfig fields ('#' starts a comment).
/// Unknown keys are errors.
AnnealConfig parse_anneal_config(std::istream& in, const std::string& source_name = "<config>");
AnnealConfig parse_anneal_config_path(const std::string& path);

} // namespace knotkit
