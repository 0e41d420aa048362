// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "kfem/fespace.hpp"
#include "kfem/jets.hpp"
#include "kfem/solvers.hpp"
#include "kfem/stab.hpp"

namespace kfem {

using ScalarFn = std::function<double(double x, double y)>;
/// Value plus first derivatives (a Jet3 carries more; only order <= 1 is read).
using GradFn = std::function<Jet3(double x, double y)>;

/// Orthogonal L2-projection pi onto V_h. The mass solve reuses one
/// factorisation across project() calls.
class L2Projector {
public:
  explicit L2Projector(const FESpace& space, int rhs_degree = 12);
  std::vector<double> project(const ScalarFn& u) const;
  const CsrMatrix& mass() const { return mass_; }

private:
  const FESpace* space_;
  int rhs_degree_;
  CsrMatrix mass_;
  std::unique_ptr<LuFactor> lu_;
  std::unique_ptr<Preconditioner> prec_;
};

/// A-orthogonal projection pi-hat: <u - pi_hat u, V>_A = 0. With
/// constrain_inflow the inflow dofs are pinned (to 0 or to supplied nodal
/// boundary values) and orthogonality holds against the constrained space.
class AProjector {
public:
  AProjector(const FESpace& space, const StabParams& stab, bool constrain_inflow,
             int rhs_degree = 12);
  std::vector<double> project(const GradFn& u, const ScalarFn* boundary_values = nullptr) const;
  /// ||v||_A by the coefficient path v^T M_A v.
  double norm_a(const std::vector<double>& coeffs) const;
  const CsrMatrix& mass_a() const { return full_; }

private:
  const FESpace* space_;
  const StabParams* stab_;
  bool constrained_;
  int rhs_degree_;
  CsrMatrix full_;  // unconstrained M_A (also used for the lift)
  CsrMatrix solve_mat_;
  std::unique_ptr<LuFactor> lu_;
  std::unique_ptr<Preconditioner> prec_;
};

}  // namespace kfem
