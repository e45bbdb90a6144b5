#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "lswg/mesh.hpp"

namespace lswg {

ParseError::ParseError(int line, const std::string& what)
    : MeshError("line " + std::to_string(line) + ": " + what), line_(line) {}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "wgmesh 1\n" << mesh.num_vertices() << ' ' << mesh.num_elements() << '\n';
  for (const Point2& p : mesh.vertices()) out << p.x << ' ' << p.y << '\n';
  for (const Element& el : mesh.elements()) {
    out << el.vertices.size();
    for (int v : el.vertices) out << ' ' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

namespace {

// Reads the next non-empty line; returns false at EOF.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

template <typename T>
T read_value(std::istringstream& is, int lineno, const char* what) {
  T value{};
  if (!(is >> value)) throw ParseError(lineno, std::string("expected ") + what);
  return value;
}

void expect_end(std::istringstream& is, int lineno) {
  std::string rest;
  if (is >> rest) throw ParseError(lineno, "unexpected trailing token '" + rest + "'");
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError(lineno, "empty input");
  {
    std::istringstream is(line);
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "wgmesh" || version != 1) {
      throw ParseError(lineno, "expected header 'wgmesh 1'");
    }
  }
  if (!next_line(in, line, lineno)) throw ParseError(lineno, "missing counts line");
  long nv = 0, ne = 0;
  {
    std::istringstream is(line);
    nv = read_value<long>(is, lineno, "vertex count");
    ne = read_value<long>(is, lineno, "element count");
    expect_end(is, lineno);
    if (nv < 3 || ne < 1) throw ParseError(lineno, "counts must be nv >= 3, ne >= 1");
  }

  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next_line(in, line, lineno)) throw ParseError(lineno, "unexpected end of vertex block");
    std::istringstream is(line);
    const double x = read_value<double>(is, lineno, "x coordinate");
    const double y = read_value<double>(is, lineno, "y coordinate");
    expect_end(is, lineno);
    vertices.push_back({x, y});
  }

  std::vector<std::vector<int>> elements;
  elements.reserve(static_cast<std::size_t>(ne));
  for (long t = 0; t < ne; ++t) {
    if (!next_line(in, line, lineno)) throw ParseError(lineno, "unexpected end of element block");
    std::istringstream is(line);
    const int m = read_value<int>(is, lineno, "element vertex count");
    if (m < 3) throw ParseError(lineno, "element needs at least 3 vertices");
    std::vector<int> verts;
    for (int i = 0; i < m; ++i) {
      const long v = read_value<long>(is, lineno, "vertex index");
      if (v < 0 || v >= nv) {
        throw ParseError(lineno, "element references missing vertex " + std::to_string(v));
      }
      verts.push_back(static_cast<int>(v));
    }
    expect_end(is, lineno);
    elements.push_back(std::move(verts));
  }
  if (next_line(in, line, lineno)) throw ParseError(lineno, "trailing content after elements");

  Box box{vertices[0].x, vertices[0].x, vertices[0].y, vertices[0].y};
  for (const auto& p : vertices) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  Mesh mesh(std::move(vertices), std::move(elements), box);
  const ValidationReport report = validate(mesh);
  if (!report.ok()) throw MeshError("invalid mesh: " + report.summary());
  return mesh;
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_mesh(mesh, out);
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return read_mesh(in);
}

}  // namespace lswg
