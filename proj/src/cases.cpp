// SPDX-License-Identifier: Apache-2.0
#include "kfem/cases.hpp"

#include <cmath>
#include <stdexcept>

namespace kfem {

namespace {

SourceEval forcing_from_jet(const TimeJet& j, double x) {
  SourceEval s;
  s.f = j.vt.value() - j.v.deriv(2, 0) + x * j.v.deriv(0, 1);
  s.fx = j.vt.deriv(1, 0) - j.v.deriv(3, 0) + j.v.deriv(0, 1) + x * j.v.deriv(1, 1);
  s.fy = j.vt.deriv(0, 1) - j.v.deriv(2, 1) + x * j.v.deriv(0, 2);
  return s;
}

}  // namespace

SourceEval CaseDefinition::forcing(double t, double x, double y) const {
  if (zero_forcing) return {};
  return forcing_from_jet(u(t, x, y), x);
}

SourceFn CaseDefinition::source() const {
  if (zero_forcing) return [](double, double, double) { return SourceEval{}; };
  return [uu = u](double t, double x, double y) { return forcing_from_jet(uu(t, x, y), x); };
}

CaseDefinition case_stationary() {
  CaseDefinition c;
  c.name = "stationary";
  c.t_f = 1.0;
  c.has_exact = true;
  c.u = [](double, double x, double y) {
    const TimeJet sx = sin(TimeJet::space_x(x) * M_PI);
    const TimeJet sy = sin(TimeJet::space_y(y) * M_PI);
    return sx * sx * sy;
  };
  c.u0 = [uu = c.u](double x, double y) { return uu(0.0, x, y).v; };
  c.g = [](double, double) { return 0.0; };
  return c;
}

CaseDefinition case_instationary() {
  CaseDefinition c;
  c.name = "instationary";
  c.t_f = 1.0;
  c.has_exact = true;
  c.u = [](double t, double x, double y) {
    if (t >= 2.0) throw std::domain_error("case_instationary: solution undefined for t >= 2");
    const TimeJet tx = TimeJet::space_x(x);
    const TimeJet ty = TimeJet::space_y(y);
    const TimeJet tt = TimeJet::time(t);
    const TimeJet bump = exp((tx - 0.5) * (tx - 0.5) * (-1.0) - (ty - 0.5) * (ty - 0.5));
    const TimeJet sx = sin(tx * M_PI);
    const TimeJet wave = sin((ty - tt - 0.5) * M_PI);
    return bump * sx * sx * wave * recip(tt * (-1.0) + 2.0) + 1.0;
  };
  c.u0 = [uu = c.u](double x, double y) { return uu(0.0, x, y).v; };
  c.g = [uu = c.u](double t, double x) { return uu(t, x, 0.0).v.value(); };
  return c;
}

CaseDefinition case_decay() {
  CaseDefinition c;
  c.name = "decay";
  c.t_f = 8.0;
  c.has_exact = false;
  c.zero_forcing = true;
  // hat: max(0, min(1 - |x-1/2|, 1 - |y-1/2|)); gradient taken branchwise
  // (defined a.e., which is all the projection quadrature needs)
  c.u0 = [](double x, double y) {
    const double mx = 1.0 - std::abs(x - 0.5);
    const double my = 1.0 - std::abs(y - 0.5);
    const double v = std::min(mx, my);
    Jet3 j;
    if (v <= 0.0) return j;
    j.c[0] = v;
    if (mx < my)
      j.c[deriv_index(1, 0)] = (x < 0.5) ? 1.0 : -1.0;
    else
      j.c[deriv_index(0, 1)] = (y < 0.5) ? 1.0 : -1.0;
    return j;
  };
  c.g = [](double, double) { return 0.0; };
  return c;
}

CaseDefinition case_by_name(const std::string& name) {
  if (name == "stationary") return case_stationary();
  if (name == "instationary") return case_instationary();
  if (name == "decay") return case_decay();
  throw std::invalid_argument("unknown case: " + name);
}

}  // namespace kfem
