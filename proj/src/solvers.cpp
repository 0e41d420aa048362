// SPDX-License-Identifier: Apache-2.0
#include "kfem/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace kfem {

namespace {

double nrm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

class IdentityPrec final : public Preconditioner {
public:
  explicit IdentityPrec(int n) : n_(n) {}
  void apply(const double* r, double* z) const override {
    std::copy(r, r + n_, z);
  }

private:
  int n_;
};

class JacobiPrec final : public Preconditioner {
public:
  explicit JacobiPrec(const CsrMatrix& a) : inv_diag_(a.n_rows, 1.0) {
    for (int i = 0; i < a.n_rows; ++i) {
      const int k = a.find(i, i);
      if (k >= 0 && a.vals[k] != 0.0) inv_diag_[i] = 1.0 / a.vals[k];
    }
  }
  void apply(const double* r, double* z) const override {
    for (size_t i = 0; i < inv_diag_.size(); ++i) z[i] = inv_diag_[i] * r[i];
  }

private:
  std::vector<double> inv_diag_;
};

// Zero fill-in ILU on the CSR pattern (IKJ variant).
class Ilu0Prec final : public Preconditioner {
public:
  explicit Ilu0Prec(const CsrMatrix& a) : a_(a), diag_pos_(a.n_rows, -1) {
    const int n = a_.n_rows;
    for (int i = 0; i < n; ++i) {
      diag_pos_[i] = a_.find(i, i);
      if (diag_pos_[i] < 0) throw std::runtime_error("ilu0: missing diagonal entry");
    }
    for (int i = 0; i < n; ++i) {
      for (int kk = a_.row_ptr[i]; kk < a_.row_ptr[i + 1]; ++kk) {
        const int k = a_.col_idx[kk];
        if (k >= i) break;
        const double akk = a_.vals[diag_pos_[k]];
        if (akk == 0.0) throw std::runtime_error("ilu0: zero pivot");
        const double lik = a_.vals[kk] / akk;
        a_.vals[kk] = lik;
        // subtract lik * U(k, j) for j > k within the row-i pattern
        int pi = kk + 1;
        int pk = diag_pos_[k] + 1;
        const int ei = a_.row_ptr[i + 1], ek = a_.row_ptr[k + 1];
        while (pi < ei && pk < ek) {
          if (a_.col_idx[pi] == a_.col_idx[pk]) {
            a_.vals[pi] -= lik * a_.vals[pk];
            ++pi;
            ++pk;
          } else if (a_.col_idx[pi] < a_.col_idx[pk]) {
            ++pi;
          } else {
            ++pk;
          }
        }
      }
    }
  }

  void apply(const double* r, double* z) const override {
    const int n = a_.n_rows;
    // L y = r (unit lower)
    for (int i = 0; i < n; ++i) {
      double s = r[i];
      for (int kk = a_.row_ptr[i]; kk < diag_pos_[i]; ++kk) s -= a_.vals[kk] * z[a_.col_idx[kk]];
      z[i] = s;
    }
    // U z = y
    for (int i = n - 1; i >= 0; --i) {
      double s = z[i];
      for (int kk = diag_pos_[i] + 1; kk < a_.row_ptr[i + 1]; ++kk) s -= a_.vals[kk] * z[a_.col_idx[kk]];
      z[i] = s / a_.vals[diag_pos_[i]];
    }
  }

private:
  CsrMatrix a_;
  std::vector<int> diag_pos_;
};

}  // namespace

PrecondKind precond_from_string(const std::string& name) {
  if (name == "none") return PrecondKind::None;
  if (name == "jacobi") return PrecondKind::Jacobi;
  if (name == "ilu0") return PrecondKind::Ilu0;
  throw std::invalid_argument("unknown preconditioner: " + name);
}

std::unique_ptr<Preconditioner> make_preconditioner(const CsrMatrix& a, PrecondKind kind) {
  switch (kind) {
    case PrecondKind::None:
      return std::make_unique<IdentityPrec>(a.n_rows);
    case PrecondKind::Jacobi:
      return std::make_unique<JacobiPrec>(a);
    case PrecondKind::Ilu0:
      return std::make_unique<Ilu0Prec>(a);
  }
  throw std::logic_error("make_preconditioner: bad kind");
}

SolveReport gmres(const CsrMatrix& a, const std::vector<double>& b, std::vector<double>& x,
                  const GmresOptions& opts, const Preconditioner* precond) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = a.n_rows;
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("gmres: rhs size mismatch");
  if (x.size() != b.size()) x.assign(b.size(), 0.0);

  std::unique_ptr<Preconditioner> owned;
  if (!precond) {
    owned = make_preconditioner(a, opts.precond);
    precond = owned.get();
  }

  SolveReport report;
  const double bnorm = nrm2(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    report.converged = true;
    report.residual = 0.0;
    return report;
  }

  const int m = std::max(1, opts.restart);
  std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
  std::vector<std::vector<double>> z(m, std::vector<double>(n));
  std::vector<double> h(static_cast<size_t>(m + 1) * m, 0.0);
  std::vector<double> cs(m), sn(m), g(m + 1);
  std::vector<double> r(n), w(n);

  auto H = [&](int i, int j) -> double& { return h[static_cast<size_t>(i) * m + j]; };

  double resid = 0.0;
  while (report.iterations < opts.max_iter) {
    a.multiply(x.data(), r.data());
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = nrm2(r);
    resid = beta / bnorm;
    if (!std::isfinite(beta)) throw std::runtime_error("gmres: NaN detected");
    if (resid <= opts.tol) {
      report.converged = true;
      break;
    }
    for (int i = 0; i < n; ++i) v[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int j = 0;
    for (; j < m && report.iterations < opts.max_iter; ++j) {
      ++report.iterations;
      precond->apply(v[j].data(), z[j].data());
      a.multiply(z[j].data(), w.data());
      // modified Gram-Schmidt
      for (int i = 0; i <= j; ++i) {
        double dotv = 0.0;
        for (int k = 0; k < n; ++k) dotv += w[k] * v[i][k];
        H(i, j) = dotv;
        for (int k = 0; k < n; ++k) w[k] -= dotv * v[i][k];
      }
      const double hj1 = nrm2(w);
      if (!std::isfinite(hj1)) throw std::runtime_error("gmres: NaN detected");
      H(j + 1, j) = hj1;
      if (hj1 > 0.0)
        for (int k = 0; k < n; ++k) v[j + 1][k] = w[k] / hj1;
      // apply accumulated Givens rotations, then form a new one
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      if (denom == 0.0) {
        ++j;
        break;  // lucky breakdown: solution is exact in this subspace
      }
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      resid = std::abs(g[j + 1]) / bnorm;
      if (resid <= opts.tol) {
        ++j;
        break;
      }
    }
    // back-substitute y and update x += Z y
    std::vector<double> y(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < j; ++k) s -= H(i, k) * y[k];
      y[i] = s / H(i, i);
    }
    for (int i = 0; i < j; ++i)
      for (int k = 0; k < n; ++k) x[k] += y[i] * z[i][k];
    if (resid <= opts.tol) {
      // confirm with the true residual
      a.multiply(x.data(), r.data());
      for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
      resid = nrm2(r) / bnorm;
      if (resid <= 10.0 * opts.tol) {
        report.converged = true;
        break;
      }
    }
  }
  report.residual = resid;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::vector<double> dense_lu_solve(const CsrMatrix& a, const std::vector<double>& b, int cap) {
  if (a.n_rows != a.n_cols) throw std::invalid_argument("dense_lu_solve: matrix not square");
  if (a.n_rows > cap) throw std::invalid_argument("dense_lu_solve: system larger than the dense cap");
  return lu_solve(csr_to_dense(a), b);
}

namespace {

double rayleigh_extremal(const CsrMatrix& s, const CsrMatrix& m, bool largest, double rel_tol) {
  const int n = s.n_rows;
  if (n <= 400) {
    const auto range = generalized_sym_eigen_range(csr_to_dense(s), csr_to_dense(m));
    return largest ? range.max : range.min;
  }
  // Iterative path. Largest: power iteration on M^{-1} S; smallest: inverse
  // iteration solving S y = M x per step. Both inner solves use GMRES.
  GmresOptions opts;
  opts.tol = std::min(1e-12, rel_tol * 1e-2);
  opts.max_iter = 20000;
  const CsrMatrix& solve_mat = largest ? m : s;
  auto prec = make_preconditioner(solve_mat, PrecondKind::Ilu0);
  std::vector<double> x(n, 1.0), y(n);
  for (int i = 0; i < n; ++i) x[i] = 1.0 + 1e-3 * ((i * 2654435761u) % 97);
  double lambda = 0.0, lambda_old = 0.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> rhs = (largest ? s : m).multiply(x);
    SolveReport rep = gmres(solve_mat, rhs, y, opts, prec.get());
    if (!rep.converged) throw std::runtime_error("eigen iteration: inner solve failed");
    const double ynorm = nrm2(y);
    for (int i = 0; i < n; ++i) x[i] = y[i] / ynorm;
    const std::vector<double> sx = s.multiply(x);
    const std::vector<double> mx = m.multiply(x);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += x[i] * sx[i];
      den += x[i] * mx[i];
    }
    lambda = num / den;
    if (it > 2 && std::abs(lambda - lambda_old) <= rel_tol * std::abs(lambda)) return lambda;
    lambda_old = lambda;
  }
  return lambda;
}

}  // namespace

double eigen_largest_generalized(const CsrMatrix& s, const CsrMatrix& m, double rel_tol) {
  return rayleigh_extremal(s, m, true, rel_tol);
}

double eigen_smallest_generalized(const CsrMatrix& s, const CsrMatrix& m, double rel_tol) {
  return rayleigh_extremal(s, m, false, rel_tol);
}

}  // namespace kfem
