// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kfem {

/// Row-major dense matrix for the small local problems (element mass,
/// stiffness, boundary mass) and for the LU oracle.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

/// Partial-pivoted LU solve, in place on a copy. Throws std::runtime_error
/// when the matrix is singular to working precision.
std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b);

/// Factorised form so repeated solves (slab oracle, inverse iteration)
/// reuse the decomposition.
class LuFactor {
public:
  explicit LuFactor(DenseMatrix a);
  std::vector<double> solve(std::vector<double> b) const;
  int size() const { return lu_.rows(); }

private:
  DenseMatrix lu_;
  std::vector<int> piv_;
};

/// Lower Cholesky factor of an SPD matrix; throws if a pivot is not positive.
DenseMatrix cholesky(const DenseMatrix& a);

/// All eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi
/// rotations. Tolerance is relative to the Frobenius norm of the input.
std::vector<double> jacobi_eigenvalues(DenseMatrix a, int max_sweeps = 64);

/// Extremal eigenvalues of S v = lambda M v with M SPD, via Cholesky
/// reduction to a standard symmetric problem.
struct GeneralizedEigenRange {
  double min;
  double max;
};
GeneralizedEigenRange generalized_sym_eigen_range(const DenseMatrix& s, const DenseMatrix& m);

}  // namespace kfem
