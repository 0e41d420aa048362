// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kfem/csr.hpp"
#include "kfem/fespace.hpp"
#include "kfem/stab.hpp"

namespace kfem {

enum class Method { Galerkin, Supg, Hypo };
Method method_from_string(const std::string& name);
std::string method_name(Method m);

/// Spatial matrices over the V_h dofs, all on one shared sparsity pattern.
/// With L U = -U_xx + x U_y elementwise:
///   M      (U, V)
///   M_A    (U, V) + (grad U, A grad V)
///   K_gal  (U_x, V_x) + (x U_y, V)
///   K_ss   sum_T (L U, tau x V_y)_T
///   K_st   sum_T (L U, tau V)_T        (pairs with V_t in time)
///   K_ts   sum_T (U, tau x V_y)_T      (pairs with U_t)
///   K_tt   sum_T (U, tau V)_T          (pairs U_t with V_t)
///   K_hypo sum_T (grad L U, A grad V)_T
/// Galerkin: tau = 0 and A = 0; Supg: A = 0. Zeroed terms keep the pattern.
struct SpatialOperators {
  Method method = Method::Hypo;
  int quad_degree = 0;
  CsrMatrix M, M_A, K_gal, K_ss, K_st, K_ts, K_tt, K_hypo;

  const CsrMatrix& time_inner() const { return method == Method::Hypo ? M_A : M; }
  /// K_gal + K_ss + K_hypo: everything multiplying U (not U_t) against
  /// time-proportional test parts.
  CsrMatrix combined_spatial() const;
};

/// Assembles every component matrix by an element loop; parallel over
/// elements with a deterministic scatter (results independent of the
/// thread count). Quadrature degree defaults to 2p+3: the forms carry an
/// extra factor x over the 2p products.
SpatialOperators assemble_spatial(const FESpace& space, const StabParams& stab, Method method,
                                  int quad_degree = -1);

/// Forcing data at a space-time point: f and its spatial gradient
/// (<f,V>_A needs grad f).
struct SourceEval {
  double f = 0.0;
  double fx = 0.0;
  double fy = 0.0;
};
using SourceFn = std::function<SourceEval(double t, double x, double y)>;

/// Right-hand-side vectors at time t:
///   f_A[i] = <f, phi_i>_A + (f, tau x d_y phi_i)   (pairs with V)
///   f_t[i] = (f, tau phi_i)                        (pairs with V_t)
/// Inflow rows are replaced downstream by the boundary-data lift.
struct RhsVectors {
  std::vector<double> f_A;
  std::vector<double> f_t;
};
RhsVectors assemble_rhs(const FESpace& space, const StabParams& stab, Method method,
                        const SourceFn& source, double t, int quad_degree = 12);

/// w^T K w.
double quad_form(const CsrMatrix& k, const std::vector<double>& w);
/// v^T K u.
double bilinear(const std::vector<double>& v, const CsrMatrix& k, const std::vector<double>& u);

/// Strong Dirichlet convention: identity row, zero off-diagonals in rows
/// and columns of the masked dofs. Lifting the right-hand side is done by
/// the caller (needs the original matrix action).
void apply_identity_constraints(CsrMatrix& a, const std::vector<char>& mask);

}  // namespace kfem
