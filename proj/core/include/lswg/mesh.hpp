#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace lswg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);

/// Axis-aligned rectangle describing the computational domain.
struct Box {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  double area() const { return (xmax - xmin) * (ymax - ymin); }
  bool on_boundary(Point2 p, double tol) const;
};

enum class GridFamily { triangular, polygonal };
enum class DomainKind { unit_square, biunit_square };

Box domain_box(DomainKind kind);
std::string to_string(GridFamily family);
std::string to_string(DomainKind kind);
GridFamily parse_grid_family(const std::string& name);
DomainKind parse_domain_kind(const std::string& name);

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by generate_grid when the requested level would exceed the element cap.
class CapacityError : public MeshError {
 public:
  using MeshError::MeshError;
};

struct Edge {
  /// Stored with the smaller vertex index first; this fixes the edge parametrization.
  std::array<int, 2> vertices{-1, -1};
  /// elements[1] == -1 on the boundary.
  std::array<int, 2> elements{-1, -1};
  bool is_boundary = false;
  double length = 0.0;

  /// Unit normal pointing out of `element`, which must be incident to this edge.
  Point2 unit_normal_of(int element) const;

  // Normal outward from elements[0]; computed from that element's traversal.
  Point2 normal0;
};

struct Element {
  std::vector<int> vertices;  // counterclockwise
  std::vector<int> edges;     // edges[i] joins vertices[i] and vertices[i+1]
  double diameter = 0.0;
  double area = 0.0;  // signed; negative means clockwise input
  Point2 centroid;
};

/// Conforming polygonal mesh with derived edge topology. Immutable after construction.
class Mesh {
 public:
  Mesh() = default;
  /// Builds edges, normals, diameters and centroids from raw element vertex lists.
  /// Throws MeshError on out-of-range indices, degenerate polygons or an edge
  /// shared by more than two elements.
  Mesh(std::vector<Point2> vertices, std::vector<std::vector<int>> elements, Box domain);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Element>& elements() const { return elements_; }
  const Point2& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
  const Element& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_boundary_edges() const;
  const Box& domain() const { return domain_; }
  /// Mesh size: max element diameter.
  double h() const { return h_; }

  /// Vertex coordinates of element `t` in counterclockwise order.
  std::vector<Point2> element_points(int t) const;

 private:
  std::vector<Point2> vertices_;
  std::vector<Edge> edges_;
  std::vector<Element> elements_;
  Box domain_;
  double h_ = 0.0;
};

/// Maximum number of elements generate_grid will produce.
inline constexpr long kMaxGridElements = 8'000'000;

/// Uniform n x n square grid (n = 2^(level-1) on the unit square, 2^level on
/// (-1,1)^2). Triangular: each square is cut along its NW-SE diagonal.
/// Polygonal: each square is cut by the zigzag (0,0)-(1/3,1/2)-(2/3,1/2)-(1,1)
/// into two non-convex pentagons.
Mesh generate_grid(GridFamily family, int level, DomainKind domain);

struct ValidationIssue {
  enum class Kind { orientation, conformity, tiling, normals, boundary, degenerate };
  Kind kind;
  int entity = -1;  // element, edge or vertex index depending on kind
  std::string message;
};

std::string to_string(ValidationIssue::Kind kind);

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  double min_chunkiness = 0.0;
  double max_chunkiness = 0.0;
  double area_sum = 0.0;

  bool ok() const { return issues.empty(); }
  bool has(ValidationIssue::Kind kind) const;
  std::string summary() const;
};

ValidationReport validate(const Mesh& mesh);

/// Inscribed-diameter proxy 4|T| / (perimeter * h_T); equals the incircle
/// diameter ratio for triangles.
double chunkiness(const Mesh& mesh, int element);

class ParseError : public MeshError {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Text format: "wgmesh 1", "nv ne", nv lines "x y", ne lines "m v1 ... vm".
void write_mesh(const Mesh& mesh, std::ostream& out);
/// Parses the text format and validates the result; invalid meshes raise MeshError.
Mesh read_mesh(std::istream& in);

void write_mesh_file(const Mesh& mesh, const std::string& path);
Mesh read_mesh_file(const std::string& path);

}  // namespace lswg
