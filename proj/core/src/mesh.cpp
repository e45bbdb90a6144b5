#include "lswg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace lswg {

double norm(Point2 a) { return std::hypot(a.x, a.y); }

bool Box::on_boundary(Point2 p, double tol) const {
  const bool in_x = p.x >= xmin - tol && p.x <= xmax + tol;
  const bool in_y = p.y >= ymin - tol && p.y <= ymax + tol;
  if (!in_x || !in_y) return false;
  return std::abs(p.x - xmin) <= tol || std::abs(p.x - xmax) <= tol ||
         std::abs(p.y - ymin) <= tol || std::abs(p.y - ymax) <= tol;
}

Box domain_box(DomainKind kind) {
  switch (kind) {
    case DomainKind::unit_square:
      return {0.0, 1.0, 0.0, 1.0};
    case DomainKind::biunit_square:
      return {-1.0, 1.0, -1.0, 1.0};
  }
  return {};
}

std::string to_string(GridFamily family) {
  return family == GridFamily::triangular ? "triangular" : "polygonal";
}

std::string to_string(DomainKind kind) {
  return kind == DomainKind::unit_square ? "unit_square" : "biunit_square";
}

GridFamily parse_grid_family(const std::string& name) {
  if (name == "triangular") return GridFamily::triangular;
  if (name == "polygonal") return GridFamily::polygonal;
  throw MeshError("unknown grid family '" + name + "'");
}

DomainKind parse_domain_kind(const std::string& name) {
  if (name == "unit_square" || name == "unit") return DomainKind::unit_square;
  if (name == "biunit_square" || name == "biunit") return DomainKind::biunit_square;
  throw MeshError("unknown domain '" + name + "'");
}

Point2 Edge::unit_normal_of(int element) const {
  if (element == elements[0]) return normal0;
  if (element == elements[1]) return -1.0 * normal0;
  throw MeshError("element " + std::to_string(element) + " is not incident to edge");
}

Mesh::Mesh(std::vector<Point2> vertices, std::vector<std::vector<int>> elements, Box domain)
    : vertices_(std::move(vertices)), domain_(domain) {
  const int nv = num_vertices();
  std::map<std::pair<int, int>, int> edge_index;
  elements_.reserve(elements.size());

  for (std::size_t t = 0; t < elements.size(); ++t) {
    const auto& verts = elements[t];
    const int ti = static_cast<int>(t);
    if (verts.size() < 3) {
      throw MeshError("element " + std::to_string(t) + " has fewer than 3 vertices");
    }
    Element el;
    el.vertices = verts;
    for (int v : verts) {
      if (v < 0 || v >= nv) {
        throw MeshError("element " + std::to_string(t) + " references missing vertex " +
                        std::to_string(v));
      }
    }

    // Shoelace area and centroid.
    const std::size_t m = verts.size();
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point2 p = vertex(verts[i]);
      const Point2 q = vertex(verts[(i + 1) % m]);
      const double c = cross(p, q);
      a2 += c;
      cx += (p.x + q.x) * c;
      cy += (p.y + q.y) * c;
    }
    if (a2 == 0.0) throw MeshError("element " + std::to_string(t) + " has zero area");
    el.area = 0.5 * a2;
    el.centroid = {cx / (3.0 * a2), cy / (3.0 * a2)};

    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        el.diameter = std::max(el.diameter, norm(vertex(verts[i]) - vertex(verts[j])));
      }
    }
    h_ = std::max(h_, el.diameter);

    for (std::size_t i = 0; i < m; ++i) {
      const int a = verts[i];
      const int b = verts[(i + 1) % m];
      if (a == b) throw MeshError("element " + std::to_string(t) + " repeats a vertex");
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, num_edges());
      if (inserted) {
        Edge e;
        e.vertices = {key.first, key.second};
        e.elements = {ti, -1};
        const Point2 d = vertex(key.second) - vertex(key.first);
        e.length = norm(d);
        if (e.length == 0.0) throw MeshError("zero-length edge in element " + std::to_string(t));
        // Counterclockwise traversal a->b has its outward normal on the right.
        const Point2 t_ab = (1.0 / e.length) * (vertex(b) - vertex(a));
        e.normal0 = {t_ab.y, -t_ab.x};
        edges_.push_back(e);
      } else {
        Edge& e = edges_[static_cast<std::size_t>(it->second)];
        if (e.elements[1] != -1) {
          throw MeshError("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                          ") shared by more than two elements");
        }
        e.elements[1] = ti;
      }
      el.edges.push_back(it->second);
    }
    elements_.push_back(std::move(el));
  }

  for (auto& e : edges_) e.is_boundary = e.elements[1] == -1;
}

int Mesh::num_boundary_edges() const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_boundary; }));
}

std::vector<Point2> Mesh::element_points(int t) const {
  std::vector<Point2> pts;
  for (int v : element(t).vertices) pts.push_back(vertex(v));
  return pts;
}

Mesh generate_grid(GridFamily family, int level, DomainKind domain) {
  if (level < 1) throw MeshError("grid level must be >= 1");
  const int exponent = domain == DomainKind::unit_square ? level - 1 : level;
  if (exponent > 15) throw CapacityError("grid level " + std::to_string(level) + " too large");
  const long n = 1L << exponent;
  if (2 * n * n > kMaxGridElements) {
    throw CapacityError("grid level " + std::to_string(level) + " exceeds element cap of " +
                        std::to_string(kMaxGridElements));
  }

  const Box box = domain_box(domain);
  const double hx = (box.xmax - box.xmin) / static_cast<double>(n);
  const double hy = (box.ymax - box.ymin) / static_cast<double>(n);

  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1) +
                                            (family == GridFamily::polygonal ? 2 * n * n : 0)));
  // Lattice points; the last column/row is pinned to the exact box edge.
  auto coord = [](double lo, double hi, long i, long n_) {
    return i == n_ ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_);
  };
  for (long j = 0; j <= n; ++j) {
    for (long i = 0; i <= n; ++i) {
      vertices.push_back({coord(box.xmin, box.xmax, i, n), coord(box.ymin, box.ymax, j, n)});
    }
  }
  auto lattice = [n](long i, long j) { return static_cast<int>(j * (n + 1) + i); };

  std::vector<std::vector<int>> elements;
  elements.reserve(static_cast<std::size_t>(2 * n * n));
  for (long j = 0; j < n; ++j) {
    for (long i = 0; i < n; ++i) {
      const int sw = lattice(i, j), se = lattice(i + 1, j);
      const int ne = lattice(i + 1, j + 1), nw = lattice(i, j + 1);
      if (family == GridFamily::triangular) {
        elements.push_back({sw, se, nw});
        elements.push_back({se, ne, nw});
      } else {
        const Point2 o = vertices[static_cast<std::size_t>(sw)];
        const int z1 = static_cast<int>(vertices.size());
        vertices.push_back({o.x + hx / 3.0, o.y + 0.5 * hy});
        const int z2 = static_cast<int>(vertices.size());
        vertices.push_back({o.x + 2.0 * hx / 3.0, o.y + 0.5 * hy});
        elements.push_back({sw, z1, z2, ne, nw});
        elements.push_back({sw, se, ne, z2, z1});
      }
    }
  }
  return Mesh(std::move(vertices), std::move(elements), box);
}

std::string to_string(ValidationIssue::Kind kind) {
  switch (kind) {
    case ValidationIssue::Kind::orientation: return "orientation";
    case ValidationIssue::Kind::conformity: return "conformity";
    case ValidationIssue::Kind::tiling: return "tiling";
    case ValidationIssue::Kind::normals: return "normals";
    case ValidationIssue::Kind::boundary: return "boundary";
    case ValidationIssue::Kind::degenerate: return "degenerate";
  }
  return "unknown";
}

bool ValidationReport::has(ValidationIssue::Kind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const ValidationIssue& i) { return i.kind == kind; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "mesh valid";
  std::ostringstream os;
  os << issues.size() << " validation issue(s):";
  for (const auto& i : issues) os << "\n  [" << to_string(i.kind) << "] " << i.message;
  return os.str();
}

double chunkiness(const Mesh& mesh, int t) {
  const Element& el = mesh.element(t);
  double perimeter = 0.0;
  for (int e : el.edges) perimeter += mesh.edge(e).length;
  return 4.0 * std::abs(el.area) / (perimeter * el.diameter);
}

namespace {

bool segments_properly_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

ValidationReport validate(const Mesh& mesh) {
  using Kind = ValidationIssue::Kind;
  ValidationReport report;
  const double scale = std::max(mesh.domain().xmax - mesh.domain().xmin,
                                mesh.domain().ymax - mesh.domain().ymin);
  const double tol = 1e-12 * scale;

  report.min_chunkiness = mesh.num_elements() ? 1e300 : 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const Element& el = mesh.element(t);
    report.area_sum += el.area;
    if (el.area <= 0.0) {
      report.issues.push_back({Kind::orientation, t,
                               "element " + std::to_string(t) + " is not counterclockwise"});
    }
    // Simple polygon: no two non-adjacent sides cross.
    const auto pts = mesh.element_points(t);
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        if (segments_properly_cross(pts[i], pts[(i + 1) % m], pts[j], pts[(j + 1) % m])) {
          report.issues.push_back({Kind::degenerate, t,
                                   "element " + std::to_string(t) + " is self-intersecting"});
        }
      }
    }
    const double c = chunkiness(mesh, t);
    report.min_chunkiness = std::min(report.min_chunkiness, c);
    report.max_chunkiness = std::max(report.max_chunkiness, c);
  }

  const double domain_area = mesh.domain().area();
  if (std::abs(report.area_sum - domain_area) > 1e-10 * domain_area) {
    std::ostringstream os;
    os.precision(17);
    os << "element areas sum to " << report.area_sum << ", domain area is " << domain_area;
    report.issues.push_back({Kind::tiling, -1, os.str()});
  }

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edge(e);
    if (std::abs(norm(ed.normal0) - 1.0) > 1e-12) {
      report.issues.push_back({Kind::normals, e, "edge " + std::to_string(e) + " normal not unit"});
    }
    if (!ed.is_boundary) {
      // The second element must traverse the edge in the opposite direction.
      const Element& other = mesh.element(ed.elements[1]);
      const std::size_t m = other.vertices.size();
      for (std::size_t i = 0; i < m; ++i) {
        if (other.edges[i] != e) continue;
        const Point2 a = mesh.vertex(other.vertices[i]);
        const Point2 b = mesh.vertex(other.vertices[(i + 1) % m]);
        const Point2 t_ab = (1.0 / ed.length) * (b - a);
        const Point2 n1{t_ab.y, -t_ab.x};
        if (norm(n1 + ed.normal0) > 1e-12) {
          report.issues.push_back({Kind::normals, e,
                                   "edge " + std::to_string(e) +
                                       " has inconsistent normals between its two elements"});
        }
      }
    } else {
      const Point2 a = mesh.vertex(ed.vertices[0]);
      const Point2 b = mesh.vertex(ed.vertices[1]);
      const Point2 mid = 0.5 * (a + b);
      if (!mesh.domain().on_boundary(a, tol) || !mesh.domain().on_boundary(b, tol) ||
          !mesh.domain().on_boundary(mid, tol)) {
        report.issues.push_back({Kind::conformity, e,
                                 "edge " + std::to_string(e) +
                                     " has one incident element but is interior to the domain"});
      }
    }
  }

  // Hanging vertices: a vertex strictly inside some edge. Sweep over vertices sorted by x.
  std::vector<int> order(static_cast<std::size_t>(mesh.num_vertices()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return mesh.vertex(a).x < mesh.vertex(b).x; });
  std::vector<double> xs;
  xs.reserve(order.size());
  for (int v : order) xs.push_back(mesh.vertex(v).x);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edge(e);
    const Point2 a = mesh.vertex(ed.vertices[0]);
    const Point2 b = mesh.vertex(ed.vertices[1]);
    const auto lo = std::lower_bound(xs.begin(), xs.end(), std::min(a.x, b.x) - tol);
    const auto hi = std::upper_bound(xs.begin(), xs.end(), std::max(a.x, b.x) + tol);
    for (auto it = lo; it != hi; ++it) {
      const int v = order[static_cast<std::size_t>(it - xs.begin())];
      if (v == ed.vertices[0] || v == ed.vertices[1]) continue;
      const Point2 p = mesh.vertex(v);
      const double along = dot(p - a, b - a) / (ed.length * ed.length);
      if (along <= 0.0 || along >= 1.0) continue;
      if (std::abs(cross(b - a, p - a)) / ed.length <= tol) {
        report.issues.push_back({Kind::conformity, e,
                                 "vertex " + std::to_string(v) + " lies inside edge " +
                                     std::to_string(e) + " (partial edge sharing)"});
      }
    }
  }
  return report;
}

}  // namespace lswg
