// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>

#include "kfem/forms.hpp"
#include "kfem/jets.hpp"

namespace kfem {

/// Manufactured solution and data of one experiment. Manufactured cases
/// satisfy u_t - u_xx + x u_y = f by construction, with
///   f  = u_t - u_xx + x u_y
///   fx = u_tx - u_xxx + u_y + x u_xy
///   fy = u_ty - u_xxy + x u_yy
/// derived from the solution jet.
struct CaseDefinition {
  std::string name;
  double t_f = 1.0;
  bool has_exact = false;   // decay case has no closed-form solution
  bool zero_forcing = false;

  /// Full space-time jet of u (only when has_exact).
  std::function<TimeJet(double t, double x, double y)> u;
  /// Initial datum with first derivatives (enough for the A-projection).
  std::function<Jet3(double x, double y)> u0;
  /// Inflow trace g(t, x) = u(t, x, 0) on the essential boundary part.
  std::function<double(double t, double x)> g;

  SourceEval forcing(double t, double x, double y) const;
  SourceFn source() const;
};

CaseDefinition case_stationary();    // u = sin^2(pi x) sin(pi y), time-independent
CaseDefinition case_instationary();  // inhomogeneous inflow data, t_f = 1
CaseDefinition case_decay();         // f = 0, hat initial datum, t_f = 8

CaseDefinition case_by_name(const std::string& name);

}  // namespace kfem
