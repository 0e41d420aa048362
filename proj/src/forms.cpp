// SPDX-License-Identifier: Apache-2.0
#include "kfem/forms.hpp"

#include <algorithm>
#include <stdexcept>

#include "kfem/quadrature.hpp"

namespace kfem {

Method method_from_string(const std::string& name) {
  if (name == "galerkin") return Method::Galerkin;
  if (name == "supg") return Method::Supg;
  if (name == "hypo") return Method::Hypo;
  throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Galerkin:
      return "galerkin";
    case Method::Supg:
      return "supg";
    case Method::Hypo:
      return "hypo";
  }
  return "?";
}

CsrMatrix SpatialOperators::combined_spatial() const {
  CsrMatrix k = K_gal;
  for (size_t i = 0; i < k.vals.size(); ++i) k.vals[i] += K_ss.vals[i] + K_hypo.vals[i];
  return k;
}

namespace {

constexpr int kD00 = 0, kD10 = 1, kD01 = 2, kD20 = 3, kD11 = 4, kD02 = 5;
constexpr int kD30 = 6, kD21 = 7;

// Shared sparsity of the dof connectivity graph plus per-element positions
// of each (test, trial) pair.
struct ScatterPlan {
  CsrMatrix pattern;  // values unused
  std::vector<int> pos;  // [e * nloc^2 + i * nloc + j] -> nnz index
};

ScatterPlan build_plan(const FESpace& space) {
  const Mesh& mesh = space.mesh();
  const int ne = mesh.n_elements();
  const int nloc = space.n_local();
  const int ndof = space.n_dofs();

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(ne) * nloc * nloc);
  for (int e = 0; e < ne; ++e) {
    const auto& dofs = space.element_dofs(e);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) pairs.emplace_back(dofs[i], dofs[j]);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  ScatterPlan plan;
  plan.pattern.n_rows = ndof;
  plan.pattern.n_cols = ndof;
  plan.pattern.row_ptr.assign(ndof + 1, 0);
  plan.pattern.col_idx.reserve(pairs.size());
  for (const auto& pr : pairs) {
    plan.pattern.col_idx.push_back(pr.second);
    ++plan.pattern.row_ptr[pr.first + 1];
  }
  for (int r = 0; r < ndof; ++r) plan.pattern.row_ptr[r + 1] += plan.pattern.row_ptr[r];
  plan.pattern.vals.assign(pairs.size(), 0.0);

  plan.pos.resize(static_cast<size_t>(ne) * nloc * nloc);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    const auto& dofs = space.element_dofs(e);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j)
        plan.pos[static_cast<size_t>(e) * nloc * nloc + i * nloc + j] =
            plan.pattern.find(dofs[i], dofs[j]);
  }
  return plan;
}

}  // namespace

SpatialOperators assemble_spatial(const FESpace& space, const StabParams& stab, Method method,
                                  int quad_degree) {
  const Mesh& mesh = space.mesh();
  if (stab.n_elements() != mesh.n_elements())
    throw std::invalid_argument("assemble_spatial: stab/mesh mismatch");
  const int p = space.degree();
  const int required = 2 * p + 3;
  if (quad_degree < 0) quad_degree = required;
  if (quad_degree < required) throw std::invalid_argument("assemble_spatial: quadrature degree below 2p+3");

  const bool use_tau = method != Method::Galerkin;
  const bool use_a = method == Method::Hypo;

  const TriangleRule rule = triangle_rule(quad_degree);
  const int npts = rule.size();
  const int nloc = space.n_local();
  const int ne = mesh.n_elements();

  std::vector<std::vector<double>> ref_tab(npts);
  for (int g = 0; g < npts; ++g) space.basis().eval_all(rule.x[g], rule.y[g], ref_tab[g]);

  ScatterPlan plan = build_plan(space);
  const int nnz = plan.pattern.nnz();

  SpatialOperators ops;
  ops.method = method;
  ops.quad_degree = quad_degree;
  CsrMatrix* mats[8] = {&ops.M, &ops.M_A, &ops.K_gal, &ops.K_ss, &ops.K_st, &ops.K_ts, &ops.K_tt, &ops.K_hypo};
  for (CsrMatrix* m : mats) {
    m->n_rows = plan.pattern.n_rows;
    m->n_cols = plan.pattern.n_cols;
    m->row_ptr = plan.pattern.row_ptr;
    m->col_idx = plan.pattern.col_idx;
    m->vals.assign(nnz, 0.0);
  }

  // Two-phase chunks: local matrices in parallel, scatter in element order,
  // so sums are independent of the thread count.
  const int chunk = 512;
  const size_t loc_sz = static_cast<size_t>(nloc) * nloc;
  std::vector<double> buffer(static_cast<size_t>(chunk) * loc_sz * 8);

  for (int e0 = 0; e0 < ne; e0 += chunk) {
    const int e1 = std::min(ne, e0 + chunk);
#pragma omp parallel for schedule(static)
    for (int e = e0; e < e1; ++e) {
      double* loc = buffer.data() + static_cast<size_t>(e - e0) * loc_sz * 8;
      std::fill(loc, loc + loc_sz * 8, 0.0);
      const AffineMap& map = space.map(e);
      const double tau = use_tau ? stab.tau[e] : 0.0;
      // M_A always carries the ledger's A (the A-norm exists for every
      // variant); the hypo augmentation is gated by the method.
      const Sym2 a_mat = stab.A[e];
      const Sym2 a_hypo = use_a ? stab.A[e] : Sym2{};

      std::vector<double> phys(static_cast<size_t>(nloc) * kNumDerivs);
      std::vector<double> lphi(nloc), a_gx(nloc), a_gy(nloc), gl_ax(nloc), gl_ay(nloc);
      for (int g = 0; g < npts; ++g) {
        const Vec2 xy = map.to_physical(rule.x[g], rule.y[g]);
        const double w = rule.w[g] * map.det;
        for (int i = 0; i < nloc; ++i)
          physical_derivatives(map, ref_tab[g].data() + static_cast<size_t>(i) * kNumDerivs,
                               phys.data() + static_cast<size_t>(i) * kNumDerivs);
        for (int k = 0; k < nloc; ++k) {
          const double* pk = phys.data() + static_cast<size_t>(k) * kNumDerivs;
          lphi[k] = -pk[kD20] + xy.x * pk[kD01];
          a_mat.apply(pk[kD10], pk[kD01], a_gx[k], a_gy[k]);
          // grad(L phi) = (-phi_xxx + phi_y + x phi_xy, -phi_xxy + x phi_yy)
          const double glx = -pk[kD30] + pk[kD01] + xy.x * pk[kD11];
          const double gly = -pk[kD21] + xy.x * pk[kD02];
          a_hypo.apply(glx, gly, gl_ax[k], gl_ay[k]);
        }
        for (int i = 0; i < nloc; ++i) {
          const double* pi = phys.data() + static_cast<size_t>(i) * kNumDerivs;
          const double vi = pi[kD00], vix = pi[kD10], viy = pi[kD01];
          const double xvy_i = xy.x * viy;
          double* row = loc + static_cast<size_t>(i) * nloc * 8;
          for (int j = 0; j < nloc; ++j) {
            const double* pj = phys.data() + static_cast<size_t>(j) * kNumDerivs;
            const double vj = pj[kD00];
            double* c = row + static_cast<size_t>(j) * 8;
            c[0] += w * vj * vi;                                             // M
            c[1] += w * (vj * vi + a_gx[j] * vix + a_gy[j] * viy);           // M_A
            c[2] += w * (pj[kD10] * vix + xy.x * pj[kD01] * vi);             // K_gal
            if (use_tau) {
              c[3] += w * tau * lphi[j] * xvy_i;                             // K_ss
              c[4] += w * tau * lphi[j] * vi;                                // K_st
              c[5] += w * tau * vj * xvy_i;                                  // K_ts
              c[6] += w * tau * vj * vi;                                     // K_tt
            }
            if (use_a) c[7] += w * (gl_ax[j] * vix + gl_ay[j] * viy);        // K_hypo
          }
        }
      }
    }
    for (int e = e0; e < e1; ++e) {
      const double* loc = buffer.data() + static_cast<size_t>(e - e0) * loc_sz * 8;
      const int* pos = plan.pos.data() + static_cast<size_t>(e) * loc_sz;
      for (size_t ij = 0; ij < loc_sz; ++ij) {
        const int at = pos[ij];
        const double* c = loc + ij * 8;
        for (int mdx = 0; mdx < 8; ++mdx) mats[mdx]->vals[at] += c[mdx];
      }
    }
  }
  return ops;
}

RhsVectors assemble_rhs(const FESpace& space, const StabParams& stab, Method method,
                        const SourceFn& source, double t, int quad_degree) {
  const Mesh& mesh = space.mesh();
  const int ne = mesh.n_elements();
  const int nloc = space.n_local();
  const bool use_tau = method != Method::Galerkin;
  const bool use_a = method == Method::Hypo;

  const TriangleRule rule = triangle_rule(quad_degree);
  std::vector<std::vector<double>> ref_tab(rule.size());
  for (int g = 0; g < rule.size(); ++g) space.basis().eval_all(rule.x[g], rule.y[g], ref_tab[g]);

  RhsVectors out;
  out.f_A.assign(space.n_dofs(), 0.0);
  out.f_t.assign(space.n_dofs(), 0.0);

  const int chunk = 2048;
  std::vector<double> buffer(static_cast<size_t>(chunk) * nloc * 2);
  for (int e0 = 0; e0 < ne; e0 += chunk) {
    const int e1 = std::min(ne, e0 + chunk);
#pragma omp parallel for schedule(static)
    for (int e = e0; e < e1; ++e) {
      double* loc = buffer.data() + static_cast<size_t>(e - e0) * nloc * 2;
      std::fill(loc, loc + nloc * 2, 0.0);
      const AffineMap& map = space.map(e);
      const double tau = use_tau ? stab.tau[e] : 0.0;
      const Sym2 a_mat = use_a ? stab.A[e] : Sym2{};
      std::vector<double> phys(static_cast<size_t>(nloc) * kNumDerivs);
      for (int g = 0; g < rule.size(); ++g) {
        const Vec2 xy = map.to_physical(rule.x[g], rule.y[g]);
        const double w = rule.w[g] * map.det;
        const SourceEval f = source(t, xy.x, xy.y);
        double afx = 0.0, afy = 0.0;
        if (use_a) a_mat.apply(f.fx, f.fy, afx, afy);
        for (int i = 0; i < nloc; ++i)
          physical_derivatives(map, ref_tab[g].data() + static_cast<size_t>(i) * kNumDerivs,
                               phys.data() + static_cast<size_t>(i) * kNumDerivs);
        for (int i = 0; i < nloc; ++i) {
          const double* pi = phys.data() + static_cast<size_t>(i) * kNumDerivs;
          loc[2 * i] += w * (f.f * pi[kD00] + afx * pi[kD10] + afy * pi[kD01] +
                             tau * f.f * xy.x * pi[kD01]);
          loc[2 * i + 1] += w * tau * f.f * pi[kD00];
        }
      }
    }
    for (int e = e0; e < e1; ++e) {
      const double* loc = buffer.data() + static_cast<size_t>(e - e0) * nloc * 2;
      const auto& dofs = space.element_dofs(e);
      for (int i = 0; i < nloc; ++i) {
        out.f_A[dofs[i]] += loc[2 * i];
        out.f_t[dofs[i]] += loc[2 * i + 1];
      }
    }
  }
  return out;
}

double quad_form(const CsrMatrix& k, const std::vector<double>& w) {
  return bilinear(w, k, w);
}

double bilinear(const std::vector<double>& v, const CsrMatrix& k, const std::vector<double>& u) {
  const std::vector<double> ku = k.multiply(u);
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * ku[i];
  return s;
}

void apply_identity_constraints(CsrMatrix& a, const std::vector<char>& mask) {
  for (int i = 0; i < a.n_rows; ++i) {
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const int j = a.col_idx[k];
      if (mask[i] || mask[j]) a.vals[k] = (i == j) ? 1.0 : 0.0;
    }
  }
}

}  // namespace kfem
