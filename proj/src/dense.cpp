// SPDX-License-Identifier: Apache-2.0
#include "kfem/dense.hpp"

#include <algorithm>
#include <cmath>

namespace kfem {

namespace {

void lu_factor_inplace(DenseMatrix& a, std::vector<int>& piv) {
  const int n = a.rows();
  piv.resize(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int imax = k;
    double amax = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > amax) {
        amax = std::abs(a(i, k));
        imax = i;
      }
    }
    if (amax == 0.0) throw std::runtime_error("lu_factor: singular matrix");
    if (imax != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(imax, j));
      std::swap(piv[k], piv[imax]);
    }
    const double pivot = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= pivot;
      const double lik = a(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
}

std::vector<double> lu_solve_factored(const DenseMatrix& lu, const std::vector<int>& piv,
                                      const std::vector<double>& b) {
  const int n = lu.rows();
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
    x[i] = s / lu(i, i);
  }
  return x;
}

}  // namespace

std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b) {
  if (a.rows() != a.cols() || static_cast<size_t>(a.rows()) != b.size())
    throw std::runtime_error("lu_solve: dimension mismatch");
  std::vector<int> piv;
  lu_factor_inplace(a, piv);
  return lu_solve_factored(a, piv, b);
}

LuFactor::LuFactor(DenseMatrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw std::runtime_error("LuFactor: matrix not square");
  lu_factor_inplace(lu_, piv_);
}

std::vector<double> LuFactor::solve(std::vector<double> b) const {
  if (static_cast<int>(b.size()) != lu_.rows()) throw std::runtime_error("LuFactor: rhs size mismatch");
  return lu_solve_factored(lu_, piv_, b);
}

DenseMatrix cholesky(const DenseMatrix& a) {
  const int n = a.rows();
  DenseMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0) throw std::runtime_error("cholesky: matrix not SPD");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

std::vector<double> jacobi_eigenvalues(DenseMatrix a, int max_sweeps) {
  const int n = a.rows();
  double fro = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fro += a(i, j) * a(i, j);
  fro = std::sqrt(fro);
  const double tol = 1e-15 * std::max(fro, 1.0);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(2.0 * off) < tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < tol * 1e-2) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

GeneralizedEigenRange generalized_sym_eigen_range(const DenseMatrix& s, const DenseMatrix& m) {
  const int n = s.rows();
  const DenseMatrix l = cholesky(m);
  // B = L^{-1} S L^{-T}: solve L Y = S (columnwise), then L Z = Y^T.
  DenseMatrix y(n, n);
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double v = s(i, col);
      for (int k = 0; k < i; ++k) v -= l(i, k) * y(k, col);
      y(i, col) = v / l(i, i);
    }
  }
  DenseMatrix b(n, n);
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double v = y(col, i);
      for (int k = 0; k < i; ++k) v -= l(i, k) * b(k, col);
      b(i, col) = v / l(i, i);
    }
  }
  // Symmetrise against round-off before Jacobi.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (b(i, j) + b(j, i));
      b(i, j) = v;
      b(j, i) = v;
    }
  const std::vector<double> ev = jacobi_eigenvalues(b);
  return {ev.front(), ev.back()};
}

}  // namespace kfem
