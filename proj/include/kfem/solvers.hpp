// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kfem/csr.hpp"
#include "kfem/dense.hpp"

namespace kfem {

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;  // final relative residual ||Ax-b||/||b||
  bool converged = false;
  double wall_seconds = 0.0;
};

enum class PrecondKind { None, Jacobi, Ilu0 };

PrecondKind precond_from_string(const std::string& name);

/// Preconditioner interface; factorisations are built once and applied
/// per GMRES iteration.
class Preconditioner {
public:
  virtual ~Preconditioner() = default;
  virtual void apply(const double* r, double* z) const = 0;
};

std::unique_ptr<Preconditioner> make_preconditioner(const CsrMatrix& a, PrecondKind kind);

struct GmresOptions {
  double tol = 1e-10;
  int restart = 60;
  int max_iter = 5000;
  PrecondKind precond = PrecondKind::Ilu0;
};

/// Right-preconditioned restarted GMRES. Throws on NaN; non-convergence is
/// reported, not thrown.
SolveReport gmres(const CsrMatrix& a, const std::vector<double>& b, std::vector<double>& x,
                  const GmresOptions& opts, const Preconditioner* precond = nullptr);

/// Dense LU oracle; refuses systems above the cap.
inline constexpr int kDenseSolveCap = 3000;
std::vector<double> dense_lu_solve(const CsrMatrix& a, const std::vector<double>& b,
                                   int cap = kDenseSolveCap);

/// Extremal generalized eigenvalues of S v = lambda M v with M SPD.
/// Dense path (Cholesky + Jacobi) below the dense cutoff, otherwise
/// power / inverse iteration on the reduced operator.
double eigen_largest_generalized(const CsrMatrix& s, const CsrMatrix& m, double rel_tol = 1e-8);
double eigen_smallest_generalized(const CsrMatrix& s, const CsrMatrix& m, double rel_tol = 1e-8);

}  // namespace kfem
