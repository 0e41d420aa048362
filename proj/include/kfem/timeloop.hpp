// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "kfem/cases.hpp"
#include "kfem/forms.hpp"
#include "kfem/projection.hpp"
#include "kfem/timebasis.hpp"

namespace kfem {

struct TimePartition {
  std::vector<double> breakpoints;  // 0 = t_0 < ... < t_N = t_f

  int n_slabs() const { return static_cast<int>(breakpoints.size()) - 1; }
  double t_begin(int n) const { return breakpoints[n]; }
  double t_end(int n) const { return breakpoints[n + 1]; }
  double step(int n) const { return breakpoints[n + 1] - breakpoints[n]; }
  double t_final() const { return breakpoints.back(); }
  std::vector<double> steps() const;

  static TimePartition single_slab(double t_f);
  /// Uniform partition with k = t_f / N, N = ceil(t_f / k_target).
  static TimePartition uniform_from_target(double t_f, double k_target);
};

enum class KRule { SingleSlab, Fixed, H, H2 };
KRule k_rule_from_string(const std::string& s);
TimePartition make_partition(KRule rule, double t_f, double h_max, double fixed_k);

/// dG(q)-in-time coefficient blocks per slab in the reference Legendre
/// basis, plus the incoming state U(t_0^-).
struct SpaceTimeSolution {
  TimePartition partition;
  int q = 0;
  int n_dofs = 0;
  std::vector<double> initial;               // U(t_0^-)
  std::vector<std::vector<double>> blocks;   // [slab][(a * n_dofs) + i]

  /// Spatial coefficients (and d/dt coefficients) at s in [0,1] of a slab.
  void coeffs_at(const DGTimeBasis& tb, int slab, double s, std::vector<double>& c,
                 std::vector<double>* ct = nullptr) const;
  std::vector<double> endpoint_minus(int n) const;  // U(t_n^-); n = 0 gives the initial state
  std::vector<double> endpoint_plus(int n) const;   // U(t_n^+), 0 <= n < N
};

struct SolverOptions {
  GmresOptions gmres;
  bool prefer_dense = false;   // use the dense LU path when the slab fits the cap
  int dense_cap = kDenseSolveCap;
};

struct MarchResult {
  SpaceTimeSolution solution;
  long total_iterations = 0;
  std::vector<SolveReport> reports;
};

/// Marches eq. (slab form): for every slab test function V,
///   int_In (<U_t,V>_A + a_h(U,V)) dt + <U(t+),V(t+)>_A
///     = <U(t-),V(t+)>_A + int_In (<f,V>_A + (f, tau (V_t + x V_y))) dt,
/// with the inner product and operator set chosen by ops.method and inflow
/// dofs strongly imposed from the case's boundary data per time coefficient.
/// Throws on solver failure with the report attached to the message.
MarchResult march(const FESpace& space, const StabParams& stab, const SpatialOperators& ops,
                  const CaseDefinition& cs, const TimePartition& partition, int q,
                  std::vector<double> initial, const SolverOptions& solver);

/// int_In a_h(w,w) dt of a slab coefficient block (no jump terms); the
/// quadratic-form side of the coercivity checks.
double slab_ah_quadratic(const SpatialOperators& ops, const DGTimeBasis& tb, double k_n,
                         const std::vector<double>& block, int n_dofs);

/// Space-time projection pi_st = (time projection) o (A-orthogonal spatial
/// projection), slab by slab. The projector must be the unconstrained one
/// for the orthogonality identities to hold against the full space.
SpaceTimeSolution st_project(const FESpace& space, const AProjector& proj,
                             const CaseDefinition& cs, const TimePartition& partition, int q,
                             int time_quad_points = 12);

/// Snapshot export of one coefficient vector.
void write_snapshot_csv(const std::vector<double>& coeffs, std::ostream& out);
void write_snapshot_vtk(const FESpace& space, const std::vector<double>& coeffs, std::ostream& out);

}  // namespace kfem
