#pragma once

#include <string>
#include <vector>

#include "knotkit/geometry.hpp"

namespace knotkit {

struct PresetEntry {
    std::string name;
    std::string expected_class;  // documentation only, not certified topology
};

/// Built-in presets. Parametrized entries are spelled
/// "two-arc(<half-angle>)" and "torus(<p>,<q>)"; any valid parameter values
/// are accepted by build_preset, the listed ones are representatives.
std::vector<PresetEntry> catalog_entries();
std::vector<std::string> catalog_names();

/// Builds a preset start knot with n vertices, normalized to length 2*pi.
/// Knot-class labels are documentation, not certified topology.
PolyKnot build_preset(const std::string& name, int n);

} // namespace knotkit
