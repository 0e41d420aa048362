// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "kfem/cases.hpp"
#include "kfem/fespace.hpp"
#include "kfem/forms.hpp"
#include "kfem/stab.hpp"
#include "kfem/timeloop.hpp"

namespace kfem {

/// Value, derivatives to order 2 and time derivative at one point;
/// everything the norm integrands consume.
struct PointState {
  double v = 0.0, vx = 0.0, vy = 0.0, vxx = 0.0, vxy = 0.0, vyy = 0.0, vt = 0.0;
};

PointState state_from_jet(const TimeJet& jet);

/// Linear combination weight_disc * (discrete field) + weight_exact *
/// (closure field); either part may be absent. Error fields are
/// exact - discrete.
struct FieldTerm {
  const std::vector<double>* coeffs = nullptr;
  const std::vector<double>* coeffs_t = nullptr;
  double weight_disc = 1.0;
  std::function<PointState(double x, double y)> exact;
  double weight_exact = 1.0;
};

struct HypoNormParts {
  double half_wx2 = 0.0;        // 1/2 ||w_x||^2
  double gamma_delta_wy2 = 0.0; // ||sqrt(gamma delta) w_y||^2
  double half_streamline2 = 0.0;// 1/2 ||sqrt(tau)(w_t + x w_y)||^2
  double a_grad_wx2 = 0.0;      // ||sqrt(A) grad w_x||^2
  double outflow2 = 0.0;        // ||sqrt(x n2) w||^2 on the outflow boundary
  double outflow_grad2 = 0.0;   // sum_T ||sqrt(x n2 A) grad w||^2 on outflow parts of dT
  double total2() const {
    return half_wx2 + gamma_delta_wy2 + half_streamline2 + a_grad_wx2 + outflow2 + outflow_grad2;
  }
};

struct SupgNormParts {
  double wx2 = 0.0;
  double outflow2 = 0.0;
  double streamline2 = 0.0;
  double total2() const { return wx2 + outflow2 + streamline2; }
};

/// Quadrature-driven evaluation of the stabilisation norms. Reference
/// basis tables are precomputed once; evaluations loop over elements in
/// parallel with a deterministic per-element reduction.
class NormEvaluator {
public:
  NormEvaluator(const FESpace& space, const StabParams& stab, int volume_degree = 12,
                int edge_points = 10);

  HypoNormParts hypo_parts(const FieldTerm& w) const;
  SupgNormParts supg_parts(const FieldTerm& w) const;
  double norm_hypo(const FieldTerm& w) const;
  double norm_supg(const FieldTerm& w) const;
  /// ||w||_A by quadrature (closure-friendly path).
  double norm_a(const FieldTerm& w) const;

  const FESpace& space() const { return *space_; }
  const StabParams& stab() const { return *stab_; }

private:
  struct ElementAccum;
  void accumulate(const FieldTerm& w, std::vector<ElementAccum>& out) const;

  const FESpace* space_;
  const StabParams* stab_;
  TriangleRule vol_rule_;
  GaussRule edge_rule_;
  std::vector<std::vector<double>> vol_tab_;          // ref basis at volume points
  std::vector<std::vector<double>> edge_tab_;         // ref basis at 3*edge points
};

/// Space-time norm: 1/2 (sum ||[U]_n||_A^2 + ||U(t_N^-)||_A^2 +
/// ||U(t_0^+)||_A^2) + sum_n int_In 1/4 |||U|||^2 dt. With exact != null
/// the norm of the error u - U is evaluated instead.
struct StNormBreakdown {
  double jumps2 = 0.0;
  double final2 = 0.0;
  double initial2 = 0.0;
  double time_integral2 = 0.0;  // already includes the 1/4 factor
  HypoNormParts integrated;     // time-integrated components (without the 1/4)
  double total2() const { return 0.5 * (jumps2 + final2 + initial2) + time_integral2; }
};
StNormBreakdown norm_st_breakdown(const NormEvaluator& ev, const CsrMatrix& m_a,
                                  const SpaceTimeSolution& sol, const CaseDefinition* exact,
                                  int extra_time_points = 3);
double norm_st(const NormEvaluator& ev, const CsrMatrix& m_a, const SpaceTimeSolution& sol,
               const CaseDefinition* exact = nullptr, int extra_time_points = 3);

/// Experimental orders of convergence: rate_i = log(e_i/e_{i+1}) /
/// log(h_i/h_{i+1}).
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& h_values);

}  // namespace kfem
