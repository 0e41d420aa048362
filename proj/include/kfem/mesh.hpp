// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kfem {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Boundary classes of the degenerate problem: the elliptic portion carries
/// the natural condition n1*u_x = 0, the inflow portion the essential one.
/// Characteristic pieces (x*n2 = 0) count as outflow.
enum class FacetClass : std::uint8_t { Interior, Elliptic, Inflow, Outflow };

struct Facet {
  int v0 = -1;
  int v1 = -1;
  std::array<int, 2> elem = {-1, -1};   // owning elements; elem[1] = -1 on the boundary
  std::array<int, 2> local = {-1, -1};  // local edge index within each owner
  FacetClass cls = FacetClass::Interior;
  bool boundary() const { return elem[1] < 0; }
};

/// Conforming triangulation with facet adjacency and per-element geometry.
/// Immutable after construction; concurrent reads are safe.
class Mesh {
public:
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<Facet> facets;
  std::vector<std::array<int, 3>> facet_of_elem;  // local edge k = (v_k, v_{k+1 mod 3})
  std::vector<double> h_per_element;
  std::vector<double> rho_per_element;

  int n_elements() const { return static_cast<int>(triangles.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_facets() const { return static_cast<int>(facets.size()); }

  double h_min = 0.0;
  double h_max = 0.0;
  double shape_regularity = 0.0;  // max h_T / rho_T

  Vec2 vertex_of(int elem, int local) const { return vertices[triangles[elem][local]]; }
  double area(int elem) const;
  /// Outward unit normal of local edge k (vertices k, k+1 mod 3) of an element.
  Vec2 outward_normal(int elem, int local_edge) const;
  double edge_length(int elem, int local_edge) const;
  /// Outward unit normal of a boundary facet (error on interior facets).
  Vec2 facet_normal(int facet_id) const;

  bool inflow_measure_positive() const;
};

/// Uniform triangulation of the unit square with 2*n^2 elements, each grid
/// cell split along the bottom-left to top-right diagonal.
Mesh build_structured_square(int n_cells_per_side);

/// Red refinement: every triangle split into 4 congruent children.
Mesh refine_uniform(const Mesh& mesh);

/// Minimal ASCII format: "nv nt", nv lines "x y", nt lines "i j k" (0-based).
/// Classification is always recomputed on read.
Mesh read_mesh_ascii(std::istream& in);
void write_mesh_ascii(const Mesh& mesh, std::ostream& out);
Mesh read_mesh_ascii_file(const std::string& path);

/// Rebuild facets, classes, and geometry tables from vertices/triangles.
void finalize_mesh(Mesh& mesh);

}  // namespace kfem
