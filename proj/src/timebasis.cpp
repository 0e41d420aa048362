// SPDX-License-Identifier: Apache-2.0
#include "kfem/timebasis.hpp"

#include <cmath>
#include <stdexcept>

namespace kfem {

namespace {

// Legendre values and derivatives on [-1,1] up to degree q.
void legendre_all(int q, double xi, std::vector<double>& val, std::vector<double>& der) {
  val.assign(q + 1, 0.0);
  der.assign(q + 1, 0.0);
  val[0] = 1.0;
  if (q >= 1) {
    val[1] = xi;
    der[1] = 1.0;
  }
  for (int n = 1; n < q; ++n) {
    val[n + 1] = ((2.0 * n + 1.0) * xi * val[n] - n * val[n - 1]) / (n + 1.0);
    der[n + 1] = der[n - 1] + (2.0 * n + 1.0) * val[n];
  }
}

}  // namespace

DGTimeBasis::DGTimeBasis(int degree) : q_(degree), d_(degree + 1, degree + 1), e_(degree + 1, degree + 1) {
  if (degree < 0) throw std::invalid_argument("DGTimeBasis: degree must be >= 0");
  at0_.resize(q_ + 1);
  at1_.resize(q_ + 1);
  for (int a = 0; a <= q_; ++a) {
    const double scale = std::sqrt(2.0 * a + 1.0);
    at0_[a] = (a % 2 == 0 ? 1.0 : -1.0) * scale;  // L_a(-1) = (-1)^a
    at1_[a] = scale;                              // L_a(1) = 1
  }
  const GaussRule rule = gauss_legendre_01(q_ + 2);
  for (size_t g = 0; g < rule.points.size(); ++g) {
    const double s = rule.points[g], w = rule.weights[g];
    for (int a = 0; a <= q_; ++a)
      for (int b = 0; b <= q_; ++b) {
        d_(a, b) += w * deriv(a, s) * value(b, s);
        e_(a, b) += w * deriv(a, s) * deriv(b, s);
      }
  }
}

double DGTimeBasis::value(int a, double s) const {
  std::vector<double> val, der;
  legendre_all(a, 2.0 * s - 1.0, val, der);
  return std::sqrt(2.0 * a + 1.0) * val[a];
}

double DGTimeBasis::deriv(int a, double s) const {
  std::vector<double> val, der;
  legendre_all(a, 2.0 * s - 1.0, val, der);
  return 2.0 * std::sqrt(2.0 * a + 1.0) * der[a];
}

std::vector<double> time_project(const std::function<double(double)>& v, double t0, double t1,
                                 int q, int quad_points) {
  const DGTimeBasis tb(q);
  const GaussRule rule = gauss_legendre_01(std::max(quad_points, q + 2));
  std::vector<double> c(q + 1, 0.0);
  // moments against P_0..P_{q-1}: orthonormality gives c_m directly
  for (int m = 0; m < q; ++m) {
    double s = 0.0;
    for (size_t g = 0; g < rule.points.size(); ++g)
      s += rule.weights[g] * v(t0 + (t1 - t0) * rule.points[g]) * tb.value(m, rule.points[g]);
    c[m] = s;
  }
  // endpoint condition at t1^-
  double tail = 0.0;
  for (int m = 0; m < q; ++m) tail += c[m] * tb.at1(m);
  c[q] = (v(t1) - tail) / tb.at1(q);
  return c;
}

double time_eval(const DGTimeBasis& tb, const std::vector<double>& coeff, double s) {
  double sum = 0.0;
  for (int a = 0; a <= tb.q(); ++a) sum += coeff[a] * tb.value(a, s);
  return sum;
}

}  // namespace kfem
