// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "kfem/dense.hpp"
#include "kfem/quadrature.hpp"

namespace kfem {

/// Orthonormal (shifted Legendre) basis of P_q on the reference interval
/// [0,1], with the exact time matrices the slab systems need. The mass
/// matrix is the identity by construction.
class DGTimeBasis {
public:
  explicit DGTimeBasis(int degree);

  int q() const { return q_; }
  int size() const { return q_ + 1; }
  double value(int a, double s) const;
  double deriv(int a, double s) const;  // d/ds

  /// D(a,b) = int_0^1 P_a'(s) P_b(s) ds, E(a,b) = int_0^1 P_a' P_b' ds.
  const DenseMatrix& d_matrix() const { return d_; }
  const DenseMatrix& e_matrix() const { return e_; }
  double at0(int a) const { return at0_[a]; }
  double at1(int a) const { return at1_[a]; }

private:
  int q_;
  DenseMatrix d_, e_;
  std::vector<double> at0_, at1_;
};

/// P_q coefficients (in the DGTimeBasis of the reference interval) of the
/// projection that interpolates v at the right endpoint and matches the
/// first q moments over the slab; the identity on P_q.
std::vector<double> time_project(const std::function<double(double)>& v, double t0, double t1,
                                 int q, int quad_points = 12);

/// Evaluate a coefficient vector in the reference basis at s in [0,1].
double time_eval(const DGTimeBasis& tb, const std::vector<double>& coeff, double s);

}  // namespace kfem
