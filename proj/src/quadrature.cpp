// SPDX-License-Identifier: Apache-2.0
#include "kfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace kfem {

namespace {

// Legendre value and derivative on [-1,1] by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

GaussRule gauss_legendre_01(int npoints) {
  if (npoints < 1) throw std::invalid_argument("gauss_legendre_01: npoints < 1");
  GaussRule rule;
  rule.points.resize(npoints);
  rule.weights.resize(npoints);
  const int m = (npoints + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (npoints + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(npoints, x, p, dp);
      const double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_pair(npoints, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = 0.5 * (1.0 - x);  // cos ordering: map symmetric pair
    rule.points[npoints - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[npoints - 1 - i] = 0.5 * w;
  }
  return rule;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("triangle_rule: negative degree");
  // Duffy map (u,v) in [0,1]^2 -> (x,y) = (u, v(1-u)), Jacobian (1-u).
  // A degree-d integrand becomes degree d+1 in u and d in v.
  const int nu = (degree + 3) / 2;
  const int nv = (degree + 2) / 2;
  const GaussRule gu = gauss_legendre_01(nu);
  const GaussRule gv = gauss_legendre_01(nv);
  TriangleRule rule;
  rule.degree = degree;
  rule.x.reserve(static_cast<size_t>(nu) * nv);
  rule.y.reserve(static_cast<size_t>(nu) * nv);
  rule.w.reserve(static_cast<size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double u = gu.points[i];
      const double v = gv.points[j];
      rule.x.push_back(u);
      rule.y.push_back(v * (1.0 - u));
      rule.w.push_back(gu.weights[i] * gv.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace kfem
