// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "kfem/basis.hpp"  // kDerivOrders layout

namespace kfem {

/// Truncated Taylor polynomial in (dx, dy) to total order 3, stored as
/// Taylor coefficients in the kDerivOrders layout. The partial derivative
/// d^(a,b) equals a! b! times the coefficient.
struct Jet3 {
  std::array<double, kNumDerivs> c{};

  static Jet3 constant(double v);
  static Jet3 variable_x(double x0);
  static Jet3 variable_y(double y0);

  double value() const { return c[0]; }
  double deriv(int a, int b) const;

  Jet3 operator+(const Jet3& o) const;
  Jet3 operator-(const Jet3& o) const;
  Jet3 operator*(const Jet3& o) const;  // truncated product
  Jet3 operator*(double s) const;
  Jet3 operator+(double s) const;
  Jet3 operator-(double s) const;
};

/// Composition f(g) from the univariate derivatives f^(k)(g.value()),
/// k = 0..3, by Horner on the nilpotent part of g.
Jet3 compose(const Jet3& g, const std::array<double, 4>& fderiv);

Jet3 exp(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
Jet3 recip(const Jet3& a);

/// Forward-mode pair (u, du/dt) of spatial jets: carries all spatial
/// partials to order 3 of both the value and its time derivative.
struct TimeJet {
  Jet3 v;
  Jet3 vt;

  static TimeJet constant(double c) { return {Jet3::constant(c), Jet3::constant(0.0)}; }
  static TimeJet space_x(double x0) { return {Jet3::variable_x(x0), Jet3::constant(0.0)}; }
  static TimeJet space_y(double y0) { return {Jet3::variable_y(y0), Jet3::constant(0.0)}; }
  static TimeJet time(double t0) { return {Jet3::constant(t0), Jet3::constant(1.0)}; }

  TimeJet operator+(const TimeJet& o) const { return {v + o.v, vt + o.vt}; }
  TimeJet operator-(const TimeJet& o) const { return {v - o.v, vt - o.vt}; }
  TimeJet operator*(const TimeJet& o) const { return {v * o.v, vt * o.v + v * o.vt}; }
  TimeJet operator*(double s) const { return {v * s, vt * s}; }
  TimeJet operator+(double s) const { return {v + s, vt}; }
  TimeJet operator-(double s) const { return {v - s, vt}; }
};

/// f(u) with the chain rule in t: needs f^(0..3) for the value jet and
/// f^(1..4) for the time-derivative jet.
TimeJet compose(const TimeJet& g, const std::array<double, 5>& fderiv);

TimeJet exp(const TimeJet& a);
TimeJet sin(const TimeJet& a);
TimeJet cos(const TimeJet& a);
TimeJet recip(const TimeJet& a);

}  // namespace kfem
