// SPDX-License-Identifier: Apache-2.0
#include "kfem/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "kfem/dense.hpp"

namespace kfem {

int deriv_index(int a, int b) {
  for (int d = 0; d < kNumDerivs; ++d)
    if (kDerivOrders[d][0] == a && kDerivOrders[d][1] == b) return d;
  return -1;
}

namespace {

double falling(int e, int k) {
  // e*(e-1)*...*(e-k+1); zero when k > e
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= (e - i);
  return f;
}

// d^(a,b) of x^e1 y^e2 at (x,y)
double mono_deriv(int e1, int e2, int a, int b, double x, double y) {
  if (a > e1 || b > e2) return 0.0;
  const double c = falling(e1, a) * falling(e2, b);
  return c * std::pow(x, e1 - a) * std::pow(y, e2 - b);
}

}  // namespace

LagrangeBasis::LagrangeBasis(int degree) : p_(degree) {
  if (degree < 1) throw std::invalid_argument("LagrangeBasis: degree must be >= 1");
  ndof_ = (p_ + 1) * (p_ + 2) / 2;
  nodes_.reserve(ndof_);
  for (int j = 0; j <= p_; ++j)
    for (int i = 0; i + j <= p_; ++i)
      nodes_.push_back({static_cast<double>(i) / p_, static_cast<double>(j) / p_});

  mono_.reserve(ndof_);
  for (int total = 0; total <= p_; ++total)
    for (int a = total; a >= 0; --a) mono_.push_back({a, total - a});

  // Invert the Vandermonde V_ij = m_j(x_i) columnwise to get coefficients.
  DenseMatrix v(ndof_, ndof_);
  for (int i = 0; i < ndof_; ++i)
    for (int j = 0; j < ndof_; ++j)
      v(i, j) = mono_deriv(mono_[j][0], mono_[j][1], 0, 0, nodes_[i].x, nodes_[i].y);
  LuFactor lu(v);
  coeff_.assign(static_cast<size_t>(ndof_) * ndof_, 0.0);
  for (int i = 0; i < ndof_; ++i) {
    std::vector<double> e(ndof_, 0.0);
    e[i] = 1.0;
    const std::vector<double> c = lu.solve(e);
    for (int j = 0; j < ndof_; ++j) coeff_[static_cast<size_t>(j) * ndof_ + i] = c[j];
  }
}

double LagrangeBasis::eval(int i, int a, int b, double x, double y) const {
  double s = 0.0;
  for (int j = 0; j < ndof_; ++j) {
    const double c = coeff_[static_cast<size_t>(j) * ndof_ + i];
    if (c != 0.0) s += c * mono_deriv(mono_[j][0], mono_[j][1], a, b, x, y);
  }
  return s;
}

void LagrangeBasis::eval_all(double x, double y, std::vector<double>& out) const {
  out.assign(static_cast<size_t>(ndof_) * kNumDerivs, 0.0);
  for (int d = 0; d < kNumDerivs; ++d) {
    const int a = kDerivOrders[d][0], b = kDerivOrders[d][1];
    if (a + b > p_) continue;  // higher derivatives vanish identically
    for (int j = 0; j < ndof_; ++j) {
      const double mj = mono_deriv(mono_[j][0], mono_[j][1], a, b, x, y);
      if (mj == 0.0) continue;
      for (int i = 0; i < ndof_; ++i)
        out[static_cast<size_t>(i) * kNumDerivs + d] += coeff_[static_cast<size_t>(j) * ndof_ + i] * mj;
    }
  }
}

AffineMap::AffineMap(const Mesh& mesh, int elem) {
  v0 = mesh.vertex_of(elem, 0);
  const Vec2 e1 = mesh.vertex_of(elem, 1) - v0;
  const Vec2 e2 = mesh.vertex_of(elem, 2) - v0;
  jac[0][0] = e1.x;
  jac[0][1] = e2.x;
  jac[1][0] = e1.y;
  jac[1][1] = e2.y;
  det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
  if (det <= 0.0) throw std::runtime_error("AffineMap: degenerate or misoriented element");
  inv[0][0] = jac[1][1] / det;
  inv[0][1] = -jac[0][1] / det;
  inv[1][0] = -jac[1][0] / det;
  inv[1][1] = jac[0][0] / det;
}

Vec2 AffineMap::to_physical(double xr, double yr) const {
  return {v0.x + jac[0][0] * xr + jac[0][1] * yr, v0.y + jac[1][0] * xr + jac[1][1] * yr};
}

Vec2 AffineMap::to_reference(Vec2 p) const {
  const double dx = p.x - v0.x, dy = p.y - v0.y;
  return {inv[0][0] * dx + inv[0][1] * dy, inv[1][0] * dx + inv[1][1] * dy};
}

void physical_derivatives(const AffineMap& map, const double* ref, double* phys) {
  // d/dx = gx0 d_xi + gx1 d_eta, d/dy = gy0 d_xi + gy1 d_eta with the
  // entries of the inverse Jacobian; constants commute, so
  // D^(a,b) = sum_{i<=a, j<=b} C(a,i)C(b,j) gx0^i gx1^(a-i) gy0^j gy1^(b-j)
  //           d_xi^(i+j) d_eta^((a-i)+(b-j)).
  const double gx0 = map.inv[0][0], gx1 = map.inv[1][0];
  const double gy0 = map.inv[0][1], gy1 = map.inv[1][1];
  double px0[4], px1[4], py0[4], py1[4];
  px0[0] = px1[0] = py0[0] = py1[0] = 1.0;
  for (int k = 1; k < 4; ++k) {
    px0[k] = px0[k - 1] * gx0;
    px1[k] = px1[k - 1] * gx1;
    py0[k] = py0[k - 1] * gy0;
    py1[k] = py1[k - 1] * gy1;
  }
  static constexpr int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  static constexpr int ref_slot[4][4] = {
      // [i+j][(a-i)+(b-j)] -> index of d_xi^m d_eta^n in kDerivOrders
      {0, 2, 5, 9}, {1, 4, 8, -1}, {3, 7, -1, -1}, {6, -1, -1, -1}};
  for (int d = 0; d < kNumDerivs; ++d) {
    const int a = kDerivOrders[d][0], b = kDerivOrders[d][1];
    double sum = 0.0;
    for (int i = 0; i <= a; ++i) {
      for (int j = 0; j <= b; ++j) {
        const double w = binom[a][i] * binom[b][j] * px0[i] * px1[a - i] * py0[j] * py1[b - j];
        sum += w * ref[ref_slot[i + j][(a - i) + (b - j)]];
      }
    }
    phys[d] = sum;
  }
}

}  // namespace kfem
