// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "kfem/basis.hpp"
#include "kfem/mesh.hpp"

namespace kfem {

/// Continuous degree-p Lagrange space on a triangulation. Dof order:
/// vertices, then (p-1) per facet (oriented from the smaller global vertex
/// id), then element-interior dofs. Immutable after construction.
class FESpace {
public:
  FESpace(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return p_; }
  const LagrangeBasis& basis() const { return basis_; }
  int n_dofs() const { return n_dofs_; }
  int n_local() const { return basis_.size(); }

  const std::vector<int>& element_dofs(int elem) const { return elem_dofs_[elem]; }
  const AffineMap& map(int elem) const { return maps_[elem]; }
  Vec2 dof_coord(int dof) const { return dof_coords_[dof]; }

  bool is_constrained(int dof) const { return constrained_[dof] != 0; }
  const std::vector<int>& constrained_dofs() const { return constrained_list_; }

  /// Nodal interpolation at dof points of a scalar function of (x, y).
  template <class F>
  std::vector<double> interpolate(F&& f) const {
    std::vector<double> c(n_dofs_);
    for (int i = 0; i < n_dofs_; ++i) c[i] = f(dof_coords_[i].x, dof_coords_[i].y);
    return c;
  }

private:
  const Mesh* mesh_;
  int p_;
  LagrangeBasis basis_;
  int n_dofs_ = 0;
  std::vector<std::vector<int>> elem_dofs_;
  std::vector<AffineMap> maps_;
  std::vector<Vec2> dof_coords_;
  std::vector<char> constrained_;
  std::vector<int> constrained_list_;
};

/// d^(a,b) of the coefficient field at a reference point of an element,
/// with the affine chain rule applied. a+b <= 3.
double eval_field(const FESpace& space, const std::vector<double>& coeffs, int elem, Vec2 ref,
                  int a, int b);

/// Sharp per-element constants of
///   ||grad v||_T   <= C_INV * p^2 / h_T * ||v||_T
///   ||v||_{dT}     <= C_inv * p / sqrt(h_T) * ||v||_T
/// from dense generalized eigenproblems over P_p(T).
struct InverseConstants {
  std::vector<double> c_inv_grad;   // C_INV
  std::vector<double> c_inv_trace;  // C_inv
};
InverseConstants compute_inverse_constants(const FESpace& space);

}  // namespace kfem
