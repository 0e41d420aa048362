// SPDX-License-Identifier: Apache-2.0
#include "kfem/projection.hpp"

#include <cmath>

#include "kfem/forms.hpp"
#include "kfem/quadrature.hpp"

namespace kfem {

namespace {

constexpr double kProjTol = 1e-13;

// Mass-type RHS by an element loop: rhs[i] = sum_T int w(x) terms.
std::vector<double> project_rhs(const FESpace& space, int degree,
                                const std::function<void(double x, double y, double& v, double& gx, double& gy)>& field,
                                const StabParams* stab) {
  const Mesh& mesh = space.mesh();
  const int nloc = space.n_local();
  const TriangleRule rule = triangle_rule(degree);
  std::vector<std::vector<double>> tab(rule.size());
  for (int g = 0; g < rule.size(); ++g) space.basis().eval_all(rule.x[g], rule.y[g], tab[g]);

  std::vector<double> rhs(space.n_dofs(), 0.0);
  std::vector<double> phys(static_cast<size_t>(nloc) * kNumDerivs);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const AffineMap& map = space.map(e);
    const auto& dofs = space.element_dofs(e);
    for (int g = 0; g < rule.size(); ++g) {
      const Vec2 xy = map.to_physical(rule.x[g], rule.y[g]);
      const double w = rule.w[g] * map.det;
      double v = 0.0, gx = 0.0, gy = 0.0;
      field(xy.x, xy.y, v, gx, gy);
      double agx = 0.0, agy = 0.0;
      if (stab) stab->A[e].apply(gx, gy, agx, agy);
      for (int i = 0; i < nloc; ++i)
        physical_derivatives(map, tab[g].data() + static_cast<size_t>(i) * kNumDerivs,
                             phys.data() + static_cast<size_t>(i) * kNumDerivs);
      for (int i = 0; i < nloc; ++i) {
        const double* pi = phys.data() + static_cast<size_t>(i) * kNumDerivs;
        rhs[dofs[i]] += w * (v * pi[0] + agx * pi[1] + agy * pi[2]);
      }
    }
  }
  return rhs;
}

std::vector<double> solve_spd(const CsrMatrix& a, const LuFactor* lu, const Preconditioner* prec,
                              const std::vector<double>& rhs) {
  if (lu) return lu->solve(rhs);
  std::vector<double> x(rhs.size(), 0.0);
  GmresOptions opts;
  opts.tol = kProjTol;
  opts.max_iter = 10000;
  const SolveReport rep = gmres(a, rhs, x, opts, prec);
  if (!rep.converged) throw std::runtime_error("projection solve did not converge");
  return x;
}

}  // namespace

L2Projector::L2Projector(const FESpace& space, int rhs_degree)
    : space_(&space), rhs_degree_(rhs_degree) {
  // Mass needs degree 2p; use 2p+3 to share the spec's operator default.
  const Mesh& mesh = space.mesh();
  const int nloc = space.n_local();
  const TriangleRule rule = triangle_rule(2 * space.degree() + 3);
  std::vector<std::vector<double>> tab(rule.size());
  for (int g = 0; g < rule.size(); ++g) space.basis().eval_all(rule.x[g], rule.y[g], tab[g]);
  CooBuilder coo(space.n_dofs(), space.n_dofs());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const AffineMap& map = space.map(e);
    const auto& dofs = space.element_dofs(e);
    for (int g = 0; g < rule.size(); ++g) {
      const double w = rule.w[g] * map.det;
      for (int i = 0; i < nloc; ++i) {
        const double vi = tab[g][static_cast<size_t>(i) * kNumDerivs];
        for (int j = 0; j < nloc; ++j)
          coo.add(dofs[i], dofs[j], w * vi * tab[g][static_cast<size_t>(j) * kNumDerivs]);
      }
    }
  }
  mass_ = std::move(coo).to_csr();
  if (mass_.n_rows <= kDenseSolveCap)
    lu_ = std::make_unique<LuFactor>(csr_to_dense(mass_));
  else
    prec_ = make_preconditioner(mass_, PrecondKind::Ilu0);
}

std::vector<double> L2Projector::project(const ScalarFn& u) const {
  auto field = [&u](double x, double y, double& v, double& gx, double& gy) {
    v = u(x, y);
    gx = gy = 0.0;
  };
  const std::vector<double> rhs = project_rhs(*space_, rhs_degree_, field, nullptr);
  return solve_spd(mass_, lu_.get(), prec_.get(), rhs);
}

AProjector::AProjector(const FESpace& space, const StabParams& stab, bool constrain_inflow,
                       int rhs_degree)
    : space_(&space), stab_(&stab), constrained_(constrain_inflow), rhs_degree_(rhs_degree) {
  const SpatialOperators ops = assemble_spatial(space, stab, Method::Hypo);
  full_ = ops.M_A;
  solve_mat_ = full_;
  if (constrained_) {
    std::vector<char> mask(space.n_dofs(), 0);
    for (int d : space.constrained_dofs()) mask[d] = 1;
    apply_identity_constraints(solve_mat_, mask);
  }
  if (solve_mat_.n_rows <= kDenseSolveCap)
    lu_ = std::make_unique<LuFactor>(csr_to_dense(solve_mat_));
  else
    prec_ = make_preconditioner(solve_mat_, PrecondKind::Ilu0);
}

std::vector<double> AProjector::project(const GradFn& u, const ScalarFn* boundary_values) const {
  auto field = [&u](double x, double y, double& v, double& gx, double& gy) {
    const Jet3 j = u(x, y);
    v = j.value();
    gx = j.deriv(1, 0);
    gy = j.deriv(0, 1);
  };
  std::vector<double> rhs = project_rhs(*space_, rhs_degree_, field, stab_);
  if (constrained_) {
    std::vector<double> g_ext(space_->n_dofs(), 0.0);
    for (int d : space_->constrained_dofs()) {
      const Vec2 xy = space_->dof_coord(d);
      g_ext[d] = boundary_values ? (*boundary_values)(xy.x, xy.y) : 0.0;
    }
    const std::vector<double> lift = full_.multiply(g_ext);
    for (int i = 0; i < space_->n_dofs(); ++i) rhs[i] -= lift[i];
    for (int d : space_->constrained_dofs()) rhs[d] = g_ext[d];
  }
  return solve_spd(solve_mat_, lu_.get(), prec_.get(), rhs);
}

double AProjector::norm_a(const std::vector<double>& coeffs) const {
  return std::sqrt(std::max(0.0, quad_form(full_, coeffs)));
}

}  // namespace kfem
