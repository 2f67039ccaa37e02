#pragma once

#include <iosfwd>
#include <string>

#include "knotkit/geometry.hpp"

namespace knotkit {

/// Knot file format:
///   knotfile 1
///   label <text>
///   x y z        (one vertex per line, decimal or scientific notation)
/// Trailing newline required.
PolyKnot read_knotfile(std::istream& in, const std::string& source_name = "<stream>");
PolyKnot read_knotfile_path(const std::string& path);
void write_knotfile(std::ostream& out, const PolyKnot& knot);
void write_knotfile_path(const std::string& path, const PolyKnot& knot);

/// Wavefront OBJ polyline: one `v` record per vertex, one `l` record per edge
/// including the closing edge.
void write_obj(std::ostream& out, const PolyKnot& knot);
void write_obj_path(const std::string& path, const PolyKnot& knot);
PolyKnot read_obj(std::istream& in, const std::string& source_name = "<stream>");
PolyKnot read_obj_path(const std::string& path);

} // namespace knotkit
