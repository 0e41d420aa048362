// SPDX-License-Identifier: Apache-2.0
#include "kfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kfem {

namespace {

constexpr double kNormalTol = 1e-12;

double dist(Vec2 a, Vec2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

FacetClass classify_boundary_edge(Vec2 a, Vec2 b, Vec2 n) {
  if (std::abs(n.x) > kNormalTol) return FacetClass::Elliptic;
  // x*n2 is linear along the edge, so its sign is settled by the endpoints.
  const double e0 = a.x * n.y;
  const double e1 = b.x * n.y;
  const bool strictly_negative_somewhere = (e0 < -kNormalTol) || (e1 < -kNormalTol);
  const bool nonpositive_everywhere = (e0 <= kNormalTol) && (e1 <= kNormalTol);
  if (strictly_negative_somewhere && nonpositive_everywhere) return FacetClass::Inflow;
  return FacetClass::Outflow;
}

}  // namespace

double Mesh::area(int elem) const {
  const Vec2 a = vertex_of(elem, 0), b = vertex_of(elem, 1), c = vertex_of(elem, 2);
  return 0.5 * cross(b - a, c - a);
}

Vec2 Mesh::outward_normal(int elem, int local_edge) const {
  const Vec2 a = vertex_of(elem, local_edge);
  const Vec2 b = vertex_of(elem, (local_edge + 1) % 3);
  const Vec2 t = b - a;
  const double len = std::hypot(t.x, t.y);
  // CCW orientation: rotating the edge tangent clockwise points outward.
  return {t.y / len, -t.x / len};
}

double Mesh::edge_length(int elem, int local_edge) const {
  return dist(vertex_of(elem, local_edge), vertex_of(elem, (local_edge + 1) % 3));
}

Vec2 Mesh::facet_normal(int facet_id) const {
  if (facet_id < 0 || facet_id >= n_facets()) throw std::out_of_range("facet_normal: invalid facet id");
  const Facet& f = facets[facet_id];
  if (!f.boundary()) throw std::invalid_argument("facet_normal: interior facet needs an element side");
  return outward_normal(f.elem[0], f.local[0]);
}

bool Mesh::inflow_measure_positive() const {
  for (const Facet& f : facets)
    if (f.boundary() && f.cls == FacetClass::Inflow) return true;
  return false;
}

void finalize_mesh(Mesh& mesh) {
  const int ne = mesh.n_elements();
  for (int e = 0; e < ne; ++e) {
    if (mesh.area(e) <= 0.0) throw std::runtime_error("finalize_mesh: non-positive triangle area");
  }

  mesh.facets.clear();
  mesh.facet_of_elem.assign(ne, {-1, -1, -1});
  std::map<std::pair<int, int>, int> edge_ids;
  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < 3; ++k) {
      const int a = mesh.triangles[e][k];
      const int b = mesh.triangles[e][(k + 1) % 3];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = edge_ids.find(key);
      if (it == edge_ids.end()) {
        Facet f;
        f.v0 = a;
        f.v1 = b;
        f.elem[0] = e;
        f.local[0] = k;
        edge_ids.emplace(key, static_cast<int>(mesh.facets.size()));
        mesh.facet_of_elem[e][k] = static_cast<int>(mesh.facets.size());
        mesh.facets.push_back(f);
      } else {
        Facet& f = mesh.facets[it->second];
        if (f.elem[1] >= 0) throw std::runtime_error("finalize_mesh: facet shared by >2 elements");
        f.elem[1] = e;
        f.local[1] = k;
        mesh.facet_of_elem[e][k] = it->second;
      }
    }
  }

  for (Facet& f : mesh.facets) {
    if (!f.boundary()) {
      f.cls = FacetClass::Interior;
      continue;
    }
    const Vec2 a = mesh.vertices[f.v0];
    const Vec2 b = mesh.vertices[f.v1];
    f.cls = classify_boundary_edge(a, b, mesh.outward_normal(f.elem[0], f.local[0]));
  }

  mesh.h_per_element.resize(ne);
  mesh.rho_per_element.resize(ne);
  mesh.h_min = std::numeric_limits<double>::max();
  mesh.h_max = 0.0;
  mesh.shape_regularity = 0.0;
  for (int e = 0; e < ne; ++e) {
    const double l0 = mesh.edge_length(e, 0);
    const double l1 = mesh.edge_length(e, 1);
    const double l2 = mesh.edge_length(e, 2);
    const double h = std::max({l0, l1, l2});
    const double s = 0.5 * (l0 + l1 + l2);
    const double rho = mesh.area(e) / s;  // inradius = area / semiperimeter
    mesh.h_per_element[e] = h;
    mesh.rho_per_element[e] = rho;
    mesh.h_min = std::min(mesh.h_min, h);
    mesh.h_max = std::max(mesh.h_max, h);
    mesh.shape_regularity = std::max(mesh.shape_regularity, h / rho);
  }
}

Mesh build_structured_square(int n) {
  if (n < 1) throw std::invalid_argument("build_structured_square: n must be >= 1");
  Mesh mesh;
  mesh.vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  mesh.triangles.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      // split along the bottom-left -> top-right diagonal
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  finalize_mesh(mesh);
  return mesh;
}

Mesh refine_uniform(const Mesh& coarse) {
  Mesh fine;
  fine.vertices = coarse.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(fine.vertices.size());
    fine.vertices.push_back(0.5 * (coarse.vertices[a] + coarse.vertices[b]));
    midpoint.emplace(key, id);
    return id;
  };
  fine.triangles.reserve(coarse.triangles.size() * 4);
  for (const auto& t : coarse.triangles) {
    const int m01 = mid(t[0], t[1]);
    const int m12 = mid(t[1], t[2]);
    const int m20 = mid(t[2], t[0]);
    fine.triangles.push_back({t[0], m01, m20});
    fine.triangles.push_back({m01, t[1], m12});
    fine.triangles.push_back({m20, m12, t[2]});
    fine.triangles.push_back({m01, m12, m20});
  }
  finalize_mesh(fine);
  return fine;
}

Mesh read_mesh_ascii(std::istream& in) {
  int nv = 0, nt = 0;
  if (!(in >> nv >> nt)) throw std::runtime_error("read_mesh_ascii: bad header");
  if (nv < 3 || nt < 1) throw std::runtime_error("read_mesh_ascii: degenerate mesh");
  Mesh mesh;
  mesh.vertices.resize(nv);
  for (int i = 0; i < nv; ++i)
    if (!(in >> mesh.vertices[i].x >> mesh.vertices[i].y))
      throw std::runtime_error("read_mesh_ascii: bad vertex line");
  mesh.triangles.resize(nt);
  for (int e = 0; e < nt; ++e) {
    auto& t = mesh.triangles[e];
    if (!(in >> t[0] >> t[1] >> t[2])) throw std::runtime_error("read_mesh_ascii: bad triangle line");
    for (int k = 0; k < 3; ++k)
      if (t[k] < 0 || t[k] >= nv) throw std::runtime_error("read_mesh_ascii: vertex index out of range");
  }
  finalize_mesh(mesh);
  return mesh;
}

void write_mesh_ascii(const Mesh& mesh, std::ostream& out) {
  out << mesh.n_vertices() << ' ' << mesh.n_elements() << '\n';
  out.precision(17);
  for (const Vec2& v : mesh.vertices) out << v.x << ' ' << v.y << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

Mesh read_mesh_ascii_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  return read_mesh_ascii(in);
}

}  // namespace kfem
