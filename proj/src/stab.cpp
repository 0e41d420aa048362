// SPDX-License-Identifier: Apache-2.0
#include "kfem/stab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "kfem/csr.hpp"
#include "kfem/quadrature.hpp"
#include "kfem/solvers.hpp"

namespace kfem {

StabParams stab_params(const Mesh& mesh, int p, const InverseConstants& inv, ConstantsMode mode,
                       double abc_scale) {
  if (p < 1) throw std::invalid_argument("stab_params: p must be >= 1");
  const int ne = mesh.n_elements();
  StabParams stab;
  stab.p = p;
  stab.mode = mode;
  stab.abc_scale = abc_scale;
  stab.tau.resize(ne);
  stab.delta.resize(ne);
  stab.c_delta.resize(ne);
  stab.alpha.resize(ne);
  stab.beta.resize(ne);
  stab.gamma.resize(ne);
  stab.A.resize(ne);

  double cinv_grad_max = 0.0, cinv_trace_max = 0.0;
  for (int e = 0; e < ne; ++e) {
    cinv_grad_max = std::max(cinv_grad_max, inv.c_inv_grad[e]);
    cinv_trace_max = std::max(cinv_trace_max, inv.c_inv_trace[e]);
  }

  const double p4 = std::pow(static_cast<double>(p), 4);
  stab.min_c_delta = std::numeric_limits<double>::max();
  for (int e = 0; e < ne; ++e) {
    const double c_grad = (mode == ConstantsMode::GlobalMax) ? cinv_grad_max : inv.c_inv_grad[e];
    const double c_trace = (mode == ConstantsMode::GlobalMax) ? cinv_trace_max : inv.c_inv_trace[e];
    const double h = mesh.h_per_element[e];

    // sup of |x n2| over the inflow part of dT (x n2 is linear per edge, so
    // endpoint values decide; empty inflow part contributes 0) and sup of
    // |n1| over dT.
    double xn2_inflow = 0.0;
    double n1_max = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 n = mesh.outward_normal(e, k);
      const Vec2 a = mesh.vertex_of(e, k);
      const Vec2 b = mesh.vertex_of(e, (k + 1) % 3);
      n1_max = std::max(n1_max, std::abs(n.x));
      xn2_inflow = std::max({xn2_inflow, -(a.x * n.y), -(b.x * n.y)});
    }
    const double c_delta = c_trace * c_trace / 6.0 * (3.0 * xn2_inflow + 2.0 * n1_max * n1_max);
    if (c_delta <= 0.0) throw std::runtime_error("stab_params: C_delta^T = 0 on some element");

    const double delta = c_delta * p4 / (h * h);
    stab.c_delta[e] = c_delta;
    stab.delta[e] = delta;
    stab.tau[e] = h * h / (4.0 * c_grad * c_grad * p4);
    stab.alpha[e] = abc_scale / (8.0 * delta);
    stab.beta[e] = abc_scale / (24.0 * delta * delta);
    stab.gamma[e] = abc_scale / (64.0 * delta * delta * delta);
    stab.A[e] = {stab.alpha[e], stab.beta[e], stab.gamma[e]};
    stab.min_c_delta = std::min(stab.min_c_delta, c_delta);
  }
  return stab;
}

SpectralGap spectral_gap(const StabParams& stab, const Mesh& mesh, int p, double c_pf) {
  if (c_pf <= 0.0) throw std::invalid_argument("spectral_gap: C_PF must be positive");
  SpectralGap gap;
  gap.c_pf = c_pf;
  gap.min_c_delta = stab.min_c_delta;
  const double pf_term = 1.0 / (192.0 * c_pf);
  gap.pf_branch_active = pf_term <= stab.min_c_delta;
  gap.c_hc = 0.5 * std::min(pf_term, stab.min_c_delta);
  gap.kappa = gap.c_hc * std::pow(mesh.h_min, 4) / std::pow(static_cast<double>(p), 8);
  return gap;
}

std::vector<double> decay_mu(const SpectralGap& gap, const std::vector<double>& steps, int q) {
  std::vector<double> mu(steps.size());
  const double denom = 4.0 * (q + 1.0) * (q + 1.0);
  for (size_t n = 0; n < steps.size(); ++n) mu[n] = gap.kappa * steps[n] / denom;
  return mu;
}

double estimate_poincare(const FESpace& space) {
  if (space.constrained_dofs().empty())
    throw std::runtime_error("estimate_poincare: space has no inflow constraints");

  // Assemble stiffness and mass over the unconstrained dofs only.
  const Mesh& mesh = space.mesh();
  const int nloc = space.n_local();
  std::vector<int> reduced(space.n_dofs(), -1);
  int n_red = 0;
  for (int i = 0; i < space.n_dofs(); ++i)
    if (!space.is_constrained(i)) reduced[i] = n_red++;

  const TriangleRule rule = triangle_rule(2 * space.degree());
  std::vector<std::vector<double>> tab(rule.size());
  for (int g = 0; g < rule.size(); ++g) space.basis().eval_all(rule.x[g], rule.y[g], tab[g]);

  CooBuilder s_coo(n_red, n_red), m_coo(n_red, n_red);
  std::vector<double> phys(static_cast<size_t>(nloc) * kNumDerivs);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const AffineMap& map = space.map(e);
    const auto& dofs = space.element_dofs(e);
    for (int g = 0; g < rule.size(); ++g) {
      const double w = rule.w[g] * map.det;
      for (int i = 0; i < nloc; ++i)
        physical_derivatives(map, tab[g].data() + static_cast<size_t>(i) * kNumDerivs,
                             phys.data() + static_cast<size_t>(i) * kNumDerivs);
      for (int i = 0; i < nloc; ++i) {
        if (reduced[dofs[i]] < 0) continue;
        const double* pi = phys.data() + static_cast<size_t>(i) * kNumDerivs;
        for (int j = 0; j < nloc; ++j) {
          if (reduced[dofs[j]] < 0) continue;
          const double* pj = phys.data() + static_cast<size_t>(j) * kNumDerivs;
          s_coo.add(reduced[dofs[i]], reduced[dofs[j]], w * (pi[1] * pj[1] + pi[2] * pj[2]));
          m_coo.add(reduced[dofs[i]], reduced[dofs[j]], w * pi[0] * pj[0]);
        }
      }
    }
  }
  const CsrMatrix s = std::move(s_coo).to_csr();
  const CsrMatrix m = std::move(m_coo).to_csr();
  const double lambda_min = eigen_smallest_generalized(s, m);
  if (lambda_min <= 0.0) throw std::runtime_error("estimate_poincare: non-positive eigenvalue");
  return 1.0 / lambda_min;
}

void write_ledger_csv(const StabParams& stab, const Mesh& mesh, const InverseConstants& inv,
                      std::ostream& out) {
  out << "element,h_T,C_INV,C_inv,tau,delta,alpha,beta,gamma\n";
  char line[256];
  for (int e = 0; e < stab.n_elements(); ++e) {
    std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", e,
                  mesh.h_per_element[e], inv.c_inv_grad[e], inv.c_inv_trace[e], stab.tau[e],
                  stab.delta[e], stab.alpha[e], stab.beta[e], stab.gamma[e]);
    out << line;
  }
}

}  // namespace kfem
