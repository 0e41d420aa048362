// SPDX-License-Identifier: Apache-2.0
#include "kfem/fespace.hpp"

#include <cmath>
#include <stdexcept>

#include "kfem/dense.hpp"
#include "kfem/quadrature.hpp"

namespace kfem {

FESpace::FESpace(const Mesh& mesh, int degree) : mesh_(&mesh), p_(degree), basis_(degree) {
  const int nv = mesh.n_vertices();
  const int nf = mesh.n_facets();
  const int ne = mesh.n_elements();
  const int per_edge = p_ - 1;
  const int per_elem = (p_ - 1) * (p_ - 2) / 2;
  n_dofs_ = nv + nf * per_edge + ne * per_elem;

  dof_coords_.resize(n_dofs_);
  for (int v = 0; v < nv; ++v) dof_coords_[v] = mesh.vertices[v];
  for (int f = 0; f < nf; ++f) {
    const int vmin = std::min(mesh.facets[f].v0, mesh.facets[f].v1);
    const int vmax = std::max(mesh.facets[f].v0, mesh.facets[f].v1);
    for (int d = 0; d < per_edge; ++d) {
      const double s = static_cast<double>(d + 1) / p_;
      dof_coords_[nv + f * per_edge + d] = mesh.vertices[vmin] + s * (mesh.vertices[vmax] - mesh.vertices[vmin]);
    }
  }

  maps_.reserve(ne);
  for (int e = 0; e < ne; ++e) maps_.emplace_back(mesh, e);

  elem_dofs_.assign(ne, std::vector<int>(basis_.size(), -1));
  int interior_base = nv + nf * per_edge;
  for (int e = 0; e < ne; ++e) {
    const auto& tri = mesh.triangles[e];
    int interior_count = 0;
    int loc = 0;
    for (int j = 0; j <= p_; ++j) {
      for (int i = 0; i + j <= p_; ++i, ++loc) {
        int dof = -1;
        if (i == 0 && j == 0) {
          dof = tri[0];
        } else if (i == p_ && j == 0) {
          dof = tri[1];
        } else if (i == 0 && j == p_) {
          dof = tri[2];
        } else if (j == 0) {  // edge (v0, v1), step i from v0
          dof = nv + mesh.facet_of_elem[e][0] * per_edge +
                (tri[0] < tri[1] ? i - 1 : p_ - 1 - i);
        } else if (i + j == p_) {  // edge (v1, v2), step j from v1
          dof = nv + mesh.facet_of_elem[e][1] * per_edge +
                (tri[1] < tri[2] ? j - 1 : p_ - 1 - j);
        } else if (i == 0) {  // edge (v2, v0), step p-j from v2
          const int s = p_ - j;
          dof = nv + mesh.facet_of_elem[e][2] * per_edge +
                (tri[2] < tri[0] ? s - 1 : p_ - 1 - s);
        } else {
          dof = interior_base + interior_count++;
        }
        elem_dofs_[e][loc] = dof;
      }
    }
    interior_base += per_elem;
    // interior dof coordinates via the element map
    loc = 0;
    for (int j = 0; j <= p_; ++j)
      for (int i = 0; i + j <= p_; ++i, ++loc)
        if (elem_dofs_[e][loc] >= nv + nf * per_edge)
          dof_coords_[elem_dofs_[e][loc]] =
              maps_[e].to_physical(static_cast<double>(i) / p_, static_cast<double>(j) / p_);
  }

  // Constrained dofs: nodal point on the closure of the inflow boundary.
  constrained_.assign(n_dofs_, 0);
  for (int f = 0; f < nf; ++f) {
    const Facet& facet = mesh.facets[f];
    if (!facet.boundary() || facet.cls != FacetClass::Inflow) continue;
    constrained_[facet.v0] = 1;
    constrained_[facet.v1] = 1;
    for (int d = 0; d < per_edge; ++d) constrained_[nv + f * per_edge + d] = 1;
  }
  for (int i = 0; i < n_dofs_; ++i)
    if (constrained_[i]) constrained_list_.push_back(i);
}

double eval_field(const FESpace& space, const std::vector<double>& coeffs, int elem, Vec2 ref,
                  int a, int b) {
  if (a < 0 || b < 0 || a + b > 3) throw std::invalid_argument("eval_field: derivative order must satisfy a+b <= 3");
  const LagrangeBasis& basis = space.basis();
  const int nloc = basis.size();
  std::vector<double> table;
  basis.eval_all(ref.x, ref.y, table);
  const AffineMap& map = space.map(elem);
  const int d = deriv_index(a, b);
  double phys[kNumDerivs];
  double sum = 0.0;
  const auto& dofs = space.element_dofs(elem);
  for (int i = 0; i < nloc; ++i) {
    physical_derivatives(map, table.data() + static_cast<size_t>(i) * kNumDerivs, phys);
    sum += coeffs[dofs[i]] * phys[d];
  }
  return sum;
}

InverseConstants compute_inverse_constants(const FESpace& space) {
  const Mesh& mesh = space.mesh();
  const int ne = mesh.n_elements();
  const int p = space.degree();
  const int nloc = space.n_local();
  const LagrangeBasis& basis = space.basis();

  const TriangleRule vol_rule = triangle_rule(2 * p);
  const GaussRule edge_rule = gauss_legendre_01(p + 1);

  // Reference basis tables at the volume points.
  std::vector<std::vector<double>> vol_tab(vol_rule.size());
  for (int g = 0; g < vol_rule.size(); ++g) basis.eval_all(vol_rule.x[g], vol_rule.y[g], vol_tab[g]);
  // ... and at the edge points of each reference edge.
  const int negp = static_cast<int>(edge_rule.points.size());
  std::vector<std::vector<double>> edge_tab(3 * negp);
  const Vec2 ref_v[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (int k = 0; k < 3; ++k) {
    for (int g = 0; g < negp; ++g) {
      const double s = edge_rule.points[g];
      const Vec2 a = ref_v[k], b = ref_v[(k + 1) % 3];
      basis.eval_all(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), edge_tab[k * negp + g]);
    }
  }

  InverseConstants out;
  out.c_inv_grad.resize(ne);
  out.c_inv_trace.resize(ne);

#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    const AffineMap& map = space.map(e);
    DenseMatrix s(nloc, nloc), m(nloc, nloc), b(nloc, nloc);
    std::vector<double> phys(static_cast<size_t>(nloc) * kNumDerivs);
    for (int g = 0; g < vol_rule.size(); ++g) {
      const double w = vol_rule.w[g] * map.det;
      for (int i = 0; i < nloc; ++i)
        physical_derivatives(map, vol_tab[g].data() + static_cast<size_t>(i) * kNumDerivs,
                             phys.data() + static_cast<size_t>(i) * kNumDerivs);
      for (int i = 0; i < nloc; ++i) {
        const double* pi = phys.data() + static_cast<size_t>(i) * kNumDerivs;
        for (int j = 0; j < nloc; ++j) {
          const double* pj = phys.data() + static_cast<size_t>(j) * kNumDerivs;
          m(i, j) += w * pi[0] * pj[0];
          s(i, j) += w * (pi[1] * pj[1] + pi[2] * pj[2]);
        }
      }
    }
    for (int k = 0; k < 3; ++k) {
      const double len = mesh.edge_length(e, k);
      for (int g = 0; g < negp; ++g) {
        const double w = edge_rule.weights[g] * len;
        const double* tab = edge_tab[k * negp + g].data();
        for (int i = 0; i < nloc; ++i)
          for (int j = 0; j < nloc; ++j)
            b(i, j) += w * tab[static_cast<size_t>(i) * kNumDerivs] * tab[static_cast<size_t>(j) * kNumDerivs];
      }
    }
    const double h = mesh.h_per_element[e];
    const double p2 = static_cast<double>(p) * p;
    out.c_inv_grad[e] = std::sqrt(std::max(0.0, generalized_sym_eigen_range(s, m).max)) * h / p2;
    out.c_inv_trace[e] = std::sqrt(std::max(0.0, generalized_sym_eigen_range(b, m).max)) * std::sqrt(h) / p;
  }
  return out;
}

}  // namespace kfem
