// SPDX-License-Identifier: Apache-2.0
#include "kfem/jets.hpp"

#include <cmath>

namespace kfem {

namespace {

// total order of each slot in the kDerivOrders layout
constexpr int order_of(int d) { return kDerivOrders[d][0] + kDerivOrders[d][1]; }

double fact(int n) {
  static constexpr double f[4] = {1.0, 1.0, 2.0, 6.0};
  return f[n];
}

}  // namespace

Jet3 Jet3::constant(double v) {
  Jet3 j;
  j.c[0] = v;
  return j;
}

Jet3 Jet3::variable_x(double x0) {
  Jet3 j;
  j.c[0] = x0;
  j.c[deriv_index(1, 0)] = 1.0;
  return j;
}

Jet3 Jet3::variable_y(double y0) {
  Jet3 j;
  j.c[0] = y0;
  j.c[deriv_index(0, 1)] = 1.0;
  return j;
}

double Jet3::deriv(int a, int b) const {
  const int d = deriv_index(a, b);
  return c[d] * fact(a) * fact(b);
}

Jet3 Jet3::operator+(const Jet3& o) const {
  Jet3 r;
  for (int d = 0; d < kNumDerivs; ++d) r.c[d] = c[d] + o.c[d];
  return r;
}

Jet3 Jet3::operator-(const Jet3& o) const {
  Jet3 r;
  for (int d = 0; d < kNumDerivs; ++d) r.c[d] = c[d] - o.c[d];
  return r;
}

Jet3 Jet3::operator*(const Jet3& o) const {
  Jet3 r;
  for (int d1 = 0; d1 < kNumDerivs; ++d1) {
    if (c[d1] == 0.0) continue;
    const int a1 = kDerivOrders[d1][0], b1 = kDerivOrders[d1][1];
    for (int d2 = 0; d2 < kNumDerivs; ++d2) {
      if (order_of(d1) + order_of(d2) > 3) continue;
      const int a = a1 + kDerivOrders[d2][0], b = b1 + kDerivOrders[d2][1];
      r.c[deriv_index(a, b)] += c[d1] * o.c[d2];
    }
  }
  return r;
}

Jet3 Jet3::operator*(double s) const {
  Jet3 r;
  for (int d = 0; d < kNumDerivs; ++d) r.c[d] = s * c[d];
  return r;
}

Jet3 Jet3::operator+(double s) const {
  Jet3 r = *this;
  r.c[0] += s;
  return r;
}

Jet3 Jet3::operator-(double s) const {
  Jet3 r = *this;
  r.c[0] -= s;
  return r;
}

Jet3 compose(const Jet3& g, const std::array<double, 4>& f) {
  Jet3 p = g;
  p.c[0] = 0.0;  // nilpotent part, p^4 == 0
  // Horner: f0 + p (f1 + p (f2/2 + p f3/6))
  Jet3 r = Jet3::constant(f[3] / 6.0);
  r = p * r + f[2] / 2.0;
  r = p * r + f[1];
  r = p * r + f[0];
  return r;
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.c[0]);
  return compose(a, {e, e, e, e});
}

Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.c[0]), c = std::cos(a.c[0]);
  return compose(a, {s, c, -s, -c});
}

Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.c[0]), c = std::cos(a.c[0]);
  return compose(a, {c, -s, -c, s});
}

Jet3 recip(const Jet3& a) {
  const double x = a.c[0];
  return compose(a, {1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x)});
}

TimeJet compose(const TimeJet& g, const std::array<double, 5>& f) {
  TimeJet r;
  r.v = compose(g.v, {f[0], f[1], f[2], f[3]});
  // d/dt f(u) = f'(u) u_t, with f'(u) itself composed to order 3
  r.vt = compose(g.v, std::array<double, 4>{f[1], f[2], f[3], f[4]}) * g.vt;
  return r;
}

TimeJet exp(const TimeJet& a) {
  const double e = std::exp(a.v.c[0]);
  return compose(a, {e, e, e, e, e});
}

TimeJet sin(const TimeJet& a) {
  const double s = std::sin(a.v.c[0]), c = std::cos(a.v.c[0]);
  return compose(a, {s, c, -s, -c, s});
}

TimeJet cos(const TimeJet& a) {
  const double s = std::sin(a.v.c[0]), c = std::cos(a.v.c[0]);
  return compose(a, {c, -s, -c, s, c});
}

TimeJet recip(const TimeJet& a) {
  const double x = a.v.c[0];
  return compose(a, {1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x),
                     24.0 / (x * x * x * x * x)});
}

}  // namespace kfem
