// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <vector>

#include "kfem/fespace.hpp"
#include "kfem/mesh.hpp"

namespace kfem {

/// Symmetric 2x2 matrix [[a, b], [b, c]].
struct Sym2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double det() const { return a * c - b * b; }
  /// grad^T A grad for grad = (gx, gy)
  double quad(double gx, double gy) const { return a * gx * gx + 2.0 * b * gx * gy + c * gy * gy; }
  /// A * grad
  void apply(double gx, double gy, double& ox, double& oy) const {
    ox = a * gx + b * gy;
    oy = b * gx + c * gy;
  }
};

enum class ConstantsMode { PerElement, GlobalMax };

/// Per-element stabilisation ledger:
///   tau   = h_T^2 / (4 C_INV^2 p^4)
///   delta = C_delta^T p^4 / h_T^2,
///   C_delta^T = C_inv^2/6 (3 ||x n2||_{Linf(inflow part of dT)} + 2 ||n1||_{Linf(dT)}^2)
///   alpha = s/(8 delta), beta = s/(24 delta^2), gamma = s/(64 delta^3)
/// with s a configurable scalar (default 1).
struct StabParams {
  int p = 1;
  ConstantsMode mode = ConstantsMode::PerElement;
  double abc_scale = 1.0;
  std::vector<double> tau;
  std::vector<double> delta;
  std::vector<double> c_delta;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;
  std::vector<Sym2> A;
  double min_c_delta = 0.0;

  int n_elements() const { return static_cast<int>(tau.size()); }
};

StabParams stab_params(const Mesh& mesh, int p, const InverseConstants& inv,
                       ConstantsMode mode = ConstantsMode::PerElement, double abc_scale = 1.0);

/// Mesh-dependent spectral gap kappa = c_hc h_min^4 p^{-8} with
/// c_hc = min{ (192 C_PF)^{-1}, min_T C_delta^T } / 2. Diagnostic only;
/// never enters assembly.
struct SpectralGap {
  double kappa = 0.0;
  double c_hc = 0.0;
  double c_pf = 0.0;
  double min_c_delta = 0.0;
  bool pf_branch_active = false;
};
SpectralGap spectral_gap(const StabParams& stab, const Mesh& mesh, int p, double c_pf);

/// Per-step decay factors mu_n = kappa k_n / (4 (q+1)^2) of the fully
/// discrete bound ||U(t_N)||_A^2 <= prod (1+mu_n)^{-1} ||U(t_0)||_A^2.
std::vector<double> decay_mu(const SpectralGap& gap, const std::vector<double>& steps, int q);

/// Poincare-Friedrichs constant ||w||^2 <= C_PF ||grad w||^2 on the
/// inflow-constrained discrete space, from the smallest generalized
/// eigenvalue of the (stiffness, mass) pencil. Error when the space has
/// no inflow constraints.
double estimate_poincare(const FESpace& space);

/// Audit dump: element id, h_T, C_INV, C_inv, tau, delta, alpha, beta, gamma.
void write_ledger_csv(const StabParams& stab, const Mesh& mesh, const InverseConstants& inv,
                      std::ostream& out);

}  // namespace kfem
