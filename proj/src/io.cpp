#include "knotkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "knotkit/errors.hpp"

namespace knotkit {

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line, const std::string& what) {
    throw validation_error(source + ":" + std::to_string(line) + ": " + what);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

PolyKnot read_knotfile(std::istream& in, const std::string& source_name) {
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) parse_fail(source_name, 1, "empty file");
    ++lineno;
    if (line != "knotfile 1") parse_fail(source_name, lineno, "expected header 'knotfile 1'");

    if (!std::getline(in, line)) parse_fail(source_name, 2, "missing label line");
    ++lineno;
    if (line.rfind("label", 0) != 0) parse_fail(source_name, lineno, "expected 'label <text>'");
    PolyKnot knot;
    knot.label = line.size() > 6 ? line.substr(6) : "";

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z)) parse_fail(source_name, lineno, "expected three numbers");
        std::string rest;
        if (ls >> rest) parse_fail(source_name, lineno, "trailing junk after vertex");
        knot.vertices.push_back({x, y, z});
    }
    if (knot.vertices.size() < 3) parse_fail(source_name, lineno + 1, "fewer than 3 vertices");
    return knot;
}

PolyKnot read_knotfile_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path);
    return read_knotfile(in, path);
}

void write_knotfile(std::ostream& out, const PolyKnot& knot) {
    out << "knotfile 1\n";
    out << "label " << knot.label << "\n";
    for (const Vec3& v : knot.vertices)
        out << fmt_double(v.x) << " " << fmt_double(v.y) << " " << fmt_double(v.z) << "\n";
}

void write_knotfile_path(const std::string& path, const PolyKnot& knot) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write " + path);
    write_knotfile(out, knot);
}

void write_obj(std::ostream& out, const PolyKnot& knot) {
    const size_t m = knot.vertices.size();
    for (const Vec3& v : knot.vertices)
        out << "v " << fmt_double(v.x) << " " << fmt_double(v.y) << " " << fmt_double(v.z) << "\n";
    for (size_t i = 0; i < m; ++i)
        out << "l " << i + 1 << " " << (i + 1) % m + 1 << "\n";
}

void write_obj_path(const std::string& path, const PolyKnot& knot) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write " + path);
    write_obj(out, knot);
}

PolyKnot read_obj(std::istream& in, const std::string& source_name) {
    PolyKnot knot;
    knot.label = "obj";
    std::string line;
    int lineno = 0;
    std::vector<std::pair<size_t, size_t>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) parse_fail(source_name, lineno, "bad vertex record");
            knot.vertices.push_back({x, y, z});
        } else if (tag == "l") {
            long a, b;
            if (!(ls >> a)) parse_fail(source_name, lineno, "bad line record");
            while (ls >> b) {
                if (a < 1 || b < 1) parse_fail(source_name, lineno, "indices are 1-based");
                edges.emplace_back(static_cast<size_t>(a - 1), static_cast<size_t>(b - 1));
                a = b;
            }
        }
        // other records (o, g, vn, ...) are ignored
    }
    if (knot.vertices.size() < 3) parse_fail(source_name, lineno + 1, "fewer than 3 vertices");

    // Rebuild the cycle by following edges from vertex 0.
    const size_t m = knot.vertices.size();
    std::vector<std::vector<size_t>> adj(m);
    for (auto [a, b] : edges) {
        if (a >= m || b >= m) throw validation_error(source_name + ": line index out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (size_t i = 0; i < m; ++i)
        if (adj[i].size() != 2) throw validation_error(source_name + ": polyline is not a single closed loop");

    std::vector<Vec3> ordered;
    ordered.reserve(m);
    size_t prev = m, cur = 0;
    for (size_t step = 0; step < m; ++step) {
        ordered.push_back(knot.vertices[cur]);
        size_t next = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
    }
    if (cur != 0) throw validation_error(source_name + ": polyline is not a single closed loop");
    knot.vertices = std::move(ordered);
    return knot;
}

PolyKnot read_obj_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path);
    return read_obj(in, path);
}

} // namespace knotkit
