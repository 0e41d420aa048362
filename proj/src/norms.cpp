// SPDX-License-Identifier: Apache-2.0
#include "kfem/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "kfem/quadrature.hpp"

namespace kfem {

PointState state_from_jet(const TimeJet& jet) {
  PointState s;
  s.v = jet.v.value();
  s.vx = jet.v.deriv(1, 0);
  s.vy = jet.v.deriv(0, 1);
  s.vxx = jet.v.deriv(2, 0);
  s.vxy = jet.v.deriv(1, 1);
  s.vyy = jet.v.deriv(0, 2);
  s.vt = jet.vt.value();
  return s;
}

namespace {

constexpr int kD00 = 0, kD10 = 1, kD01 = 2, kD20 = 3, kD11 = 4, kD02 = 5;

// Field reference-derivative vector: ref[d] = sum_i c_i d^d phi_i(ref pt).
void field_ref_derivs(const double* tab, const double* coeffs, const int* dofs, int nloc,
                      double* out) {
  for (int d = 0; d < kNumDerivs; ++d) out[d] = 0.0;
  for (int i = 0; i < nloc; ++i) {
    const double ci = coeffs[dofs[i]];
    if (ci == 0.0) continue;
    const double* ti = tab + static_cast<size_t>(i) * kNumDerivs;
    for (int d = 0; d < kNumDerivs; ++d) out[d] += ci * ti[d];
  }
}

}  // namespace

struct NormEvaluator::ElementAccum {
  double half_wx2 = 0.0;
  double gd_wy2 = 0.0;
  double half_sl2 = 0.0;
  double a_grad2 = 0.0;
  double outflow2 = 0.0;
  double outflow_grad2 = 0.0;
  double l2 = 0.0;       // ||w||^2 contribution
  double a_inner2 = 0.0; // (grad w, A grad w) contribution
  double sl_raw2 = 0.0;  // ||sqrt(tau)(w_t + x w_y)||^2 without the 1/2
  double wx_raw2 = 0.0;  // ||w_x||^2 without the 1/2
};

NormEvaluator::NormEvaluator(const FESpace& space, const StabParams& stab, int volume_degree,
                             int edge_points)
    : space_(&space), stab_(&stab), vol_rule_(triangle_rule(volume_degree)),
      edge_rule_(gauss_legendre_01(edge_points)) {
  const int npts = vol_rule_.size();
  vol_tab_.resize(npts);
  for (int g = 0; g < npts; ++g) space.basis().eval_all(vol_rule_.x[g], vol_rule_.y[g], vol_tab_[g]);
  const int nep = static_cast<int>(edge_rule_.points.size());
  edge_tab_.resize(3 * nep);
  const Vec2 ref_v[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (int k = 0; k < 3; ++k)
    for (int g = 0; g < nep; ++g) {
      const double s = edge_rule_.points[g];
      const Vec2 a = ref_v[k], b = ref_v[(k + 1) % 3];
      space.basis().eval_all(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), edge_tab_[k * nep + g]);
    }
}

void NormEvaluator::accumulate(const FieldTerm& w, std::vector<ElementAccum>& acc) const {
  const Mesh& mesh = space_->mesh();
  const int ne = mesh.n_elements();
  const int nloc = space_->n_local();
  const int nep = static_cast<int>(edge_rule_.points.size());
  acc.assign(ne, ElementAccum{});

#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    ElementAccum& a = acc[e];
    const AffineMap& map = space_->map(e);
    const int* dofs = space_->element_dofs(e).data();
    const double tau = stab_->tau[e];
    const double gd = stab_->gamma[e] * stab_->delta[e];
    const Sym2 amat = stab_->A[e];

    double ref_c[kNumDerivs], ref_t[kNumDerivs], phys_c[kNumDerivs], phys_t[kNumDerivs];
    for (int g = 0; g < vol_rule_.size(); ++g) {
      const Vec2 xy = map.to_physical(vol_rule_.x[g], vol_rule_.y[g]);
      const double wq = vol_rule_.w[g] * map.det;
      PointState st;
      if (w.coeffs) {
        field_ref_derivs(vol_tab_[g].data(), w.coeffs->data(), dofs, nloc, ref_c);
        physical_derivatives(map, ref_c, phys_c);
        st.v += w.weight_disc * phys_c[kD00];
        st.vx += w.weight_disc * phys_c[kD10];
        st.vy += w.weight_disc * phys_c[kD01];
        st.vxx += w.weight_disc * phys_c[kD20];
        st.vxy += w.weight_disc * phys_c[kD11];
        st.vyy += w.weight_disc * phys_c[kD02];
        if (w.coeffs_t) {
          field_ref_derivs(vol_tab_[g].data(), w.coeffs_t->data(), dofs, nloc, ref_t);
          physical_derivatives(map, ref_t, phys_t);
          st.vt += w.weight_disc * phys_t[kD00];
        }
      }
      if (w.exact) {
        const PointState ex = w.exact(xy.x, xy.y);
        st.v += w.weight_exact * ex.v;
        st.vx += w.weight_exact * ex.vx;
        st.vy += w.weight_exact * ex.vy;
        st.vxx += w.weight_exact * ex.vxx;
        st.vxy += w.weight_exact * ex.vxy;
        st.vyy += w.weight_exact * ex.vyy;
        st.vt += w.weight_exact * ex.vt;
      }
      const double streamline = st.vt + xy.x * st.vy;
      a.wx_raw2 += wq * st.vx * st.vx;
      a.half_wx2 += 0.5 * wq * st.vx * st.vx;
      a.gd_wy2 += wq * gd * st.vy * st.vy;
      a.sl_raw2 += wq * tau * streamline * streamline;
      a.half_sl2 += 0.5 * wq * tau * streamline * streamline;
      a.a_grad2 += wq * amat.quad(st.vxx, st.vxy);
      a.l2 += wq * st.v * st.v;
      a.a_inner2 += wq * amat.quad(st.vx, st.vy);
    }

    // facet terms: (x n2)_+ weights on every element edge (the per-element
    // outflow parts include interior facets), plus the global outflow
    // boundary term on facets classified Outflow
    for (int k = 0; k < 3; ++k) {
      const Vec2 n = mesh.outward_normal(e, k);
      const double len = mesh.edge_length(e, k);
      const int facet = mesh.facet_of_elem[e][k];
      const bool on_outflow_boundary = mesh.facets[facet].cls == FacetClass::Outflow;
      for (int g = 0; g < nep; ++g) {
        const double* tab = edge_tab_[k * nep + g].data();
        const double s = edge_rule_.points[g];
        const Vec2 pa = mesh.vertex_of(e, k), pb = mesh.vertex_of(e, (k + 1) % 3);
        const Vec2 xy = pa + s * (pb - pa);
        const double xn2 = xy.x * n.y;
        if (xn2 <= 0.0 && !on_outflow_boundary) continue;
        double v = 0.0, vx = 0.0, vy = 0.0;
        if (w.coeffs) {
          field_ref_derivs(tab, w.coeffs->data(), dofs, nloc, ref_c);
          physical_derivatives(map, ref_c, phys_c);
          v += w.weight_disc * phys_c[kD00];
          vx += w.weight_disc * phys_c[kD10];
          vy += w.weight_disc * phys_c[kD01];
        }
        if (w.exact) {
          const PointState ex = w.exact(xy.x, xy.y);
          v += w.weight_exact * ex.v;
          vx += w.weight_exact * ex.vx;
          vy += w.weight_exact * ex.vy;
        }
        const double wq = edge_rule_.weights[g] * len;
        if (xn2 > 0.0) a.outflow_grad2 += wq * xn2 * amat.quad(vx, vy);
        if (on_outflow_boundary) a.outflow2 += wq * std::max(0.0, xn2) * v * v;
      }
    }
  }
}

HypoNormParts NormEvaluator::hypo_parts(const FieldTerm& w) const {
  std::vector<ElementAccum> acc;
  accumulate(w, acc);
  HypoNormParts p;
  for (const ElementAccum& a : acc) {
    p.half_wx2 += a.half_wx2;
    p.gamma_delta_wy2 += a.gd_wy2;
    p.half_streamline2 += a.half_sl2;
    p.a_grad_wx2 += a.a_grad2;
    p.outflow2 += a.outflow2;
    p.outflow_grad2 += a.outflow_grad2;
  }
  return p;
}

SupgNormParts NormEvaluator::supg_parts(const FieldTerm& w) const {
  std::vector<ElementAccum> acc;
  accumulate(w, acc);
  SupgNormParts p;
  for (const ElementAccum& a : acc) {
    p.wx2 += a.wx_raw2;
    p.outflow2 += a.outflow2;
    p.streamline2 += a.sl_raw2;
  }
  return p;
}

double NormEvaluator::norm_hypo(const FieldTerm& w) const {
  return std::sqrt(hypo_parts(w).total2());
}

double NormEvaluator::norm_supg(const FieldTerm& w) const {
  return std::sqrt(supg_parts(w).total2());
}

double NormEvaluator::norm_a(const FieldTerm& w) const {
  std::vector<ElementAccum> acc;
  accumulate(w, acc);
  double s = 0.0;
  for (const ElementAccum& a : acc) s += a.l2 + a.a_inner2;
  return std::sqrt(std::max(0.0, s));
}

StNormBreakdown norm_st_breakdown(const NormEvaluator& ev, const CsrMatrix& m_a,
                                  const SpaceTimeSolution& sol, const CaseDefinition* exact,
                                  int extra_time_points) {
  if (exact && !exact->has_exact)
    throw std::invalid_argument("norm_st: case provides no exact solution");
  const int nslabs = sol.partition.n_slabs();
  const DGTimeBasis tb(sol.q);
  const GaussRule trule = gauss_legendre_01(sol.q + extra_time_points);

  StNormBreakdown out;
  // interior jumps: [e]_n = -[U]_n, same A-norm either way
  for (int n = 1; n < nslabs; ++n) {
    std::vector<double> d = sol.endpoint_plus(n);
    const std::vector<double> um = sol.endpoint_minus(n);
    for (size_t i = 0; i < d.size(); ++i) d[i] -= um[i];
    out.jumps2 += quad_form(m_a, d);
  }

  auto endpoint_norm2 = [&](const std::vector<double>& coeffs, double t) {
    FieldTerm term;
    term.coeffs = &coeffs;
    if (exact) {
      term.weight_disc = -1.0;
      term.exact = [exact, t](double x, double y) { return state_from_jet(exact->u(t, x, y)); };
      term.weight_exact = 1.0;
      const double v = ev.norm_a(term);
      return v * v;
    }
    return quad_form(m_a, coeffs);
  };
  const std::vector<double> u_final = sol.endpoint_minus(nslabs);
  out.final2 = endpoint_norm2(u_final, sol.partition.t_final());
  const std::vector<double> u0p = sol.endpoint_plus(0);
  out.initial2 = endpoint_norm2(u0p, sol.partition.t_begin(0));

  std::vector<double> c, ct;
  for (int n = 0; n < nslabs; ++n) {
    const double k = sol.partition.step(n);
    for (size_t g = 0; g < trule.points.size(); ++g) {
      const double s = trule.points[g];
      const double t = sol.partition.t_begin(n) + k * s;
      sol.coeffs_at(tb, n, s, c, &ct);
      FieldTerm term;
      term.coeffs = &c;
      term.coeffs_t = &ct;
      if (exact) {
        term.weight_disc = -1.0;
        term.exact = [exact, t](double x, double y) { return state_from_jet(exact->u(t, x, y)); };
        term.weight_exact = 1.0;
      }
      const HypoNormParts parts = ev.hypo_parts(term);
      const double wq = trule.weights[g] * k;
      out.time_integral2 += wq * 0.25 * parts.total2();
      out.integrated.half_wx2 += wq * parts.half_wx2;
      out.integrated.gamma_delta_wy2 += wq * parts.gamma_delta_wy2;
      out.integrated.half_streamline2 += wq * parts.half_streamline2;
      out.integrated.a_grad_wx2 += wq * parts.a_grad_wx2;
      out.integrated.outflow2 += wq * parts.outflow2;
      out.integrated.outflow_grad2 += wq * parts.outflow_grad2;
    }
  }
  return out;
}

double norm_st(const NormEvaluator& ev, const CsrMatrix& m_a, const SpaceTimeSolution& sol,
               const CaseDefinition* exact, int extra_time_points) {
  return std::sqrt(norm_st_breakdown(ev, m_a, sol, exact, extra_time_points).total2());
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& h_values) {
  if (errors.size() != h_values.size() || errors.size() < 2)
    throw std::invalid_argument("eoc: need equal-length lists with >= 2 entries");
  for (double e : errors)
    if (!(e > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
  std::vector<double> rates(errors.size() - 1);
  for (size_t i = 0; i + 1 < errors.size(); ++i)
    rates[i] = std::log(errors[i] / errors[i + 1]) / std::log(h_values[i] / h_values[i + 1]);
  return rates;
}

}  // namespace kfem
