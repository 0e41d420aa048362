// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "kfem/mesh.hpp"

namespace kfem {

/// Multi-indices (a,b) with a+b <= 3 in a fixed order; all derivative
/// tables use this layout.
inline constexpr int kNumDerivs = 10;
inline constexpr std::array<std::array<int, 2>, kNumDerivs> kDerivOrders = {{
    {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3},
}};
int deriv_index(int a, int b);  // -1 when a+b > 3

/// Lagrange basis of total degree p on the reference triangle with an
/// equispaced node lattice. Derivatives come from the monomial expansion,
/// so any order is exact; orders above p vanish identically.
class LagrangeBasis {
public:
  explicit LagrangeBasis(int degree);

  int degree() const { return p_; }
  int size() const { return ndof_; }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  /// d^(a,b) phi_i at a reference point.
  double eval(int i, int a, int b, double x, double y) const;

  /// All basis functions, all multi-indices up to order 3, at one point.
  /// out[i*kNumDerivs + d] with d per kDerivOrders.
  void eval_all(double x, double y, std::vector<double>& out) const;

private:
  int p_;
  int ndof_;
  std::vector<Vec2> nodes_;
  std::vector<std::array<int, 2>> mono_;    // monomial exponents
  std::vector<double> coeff_;               // coeff_[j*ndof+i]: phi_i = sum_j c_ji x^aj y^bj
};

/// Affine reference-to-physical map of a triangle and the transform of
/// reference derivative tables to physical ones.
struct AffineMap {
  Vec2 v0;
  double jac[2][2];   // columns v1-v0, v2-v0
  double inv[2][2];   // inverse of jac
  double det;

  explicit AffineMap(const Mesh& mesh, int elem);
  Vec2 to_physical(double xref, double yref) const;
  Vec2 to_reference(Vec2 phys) const;
};

/// Converts one reference derivative table (kNumDerivs entries, layout
/// kDerivOrders) into physical derivatives via the constant chain rule.
void physical_derivatives(const AffineMap& map, const double* ref, double* phys);

}  // namespace kfem
