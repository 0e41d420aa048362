// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace kfem {

/// Gauss-Legendre rule on [0,1]; exact for polynomials of degree 2n-1.
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};
GaussRule gauss_legendre_01(int npoints);

/// Quadrature on the reference triangle {(x,y): x,y >= 0, x+y <= 1},
/// built as a Duffy-collapsed tensor Gauss rule. Exact for all monomials
/// x^a y^b with a+b <= degree.
struct TriangleRule {
  int degree = 0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;  // sums to 1/2
  int size() const { return static_cast<int>(w.size()); }
};
TriangleRule triangle_rule(int degree);

}  // namespace kfem
