// SPDX-License-Identifier: Apache-2.0
#include "kfem/csr.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kfem/dense.hpp"

namespace kfem {

void CsrMatrix::multiply(const double* x, double* y) const {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_rows; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += vals[k] * x[col_idx[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_cols) throw std::invalid_argument("CsrMatrix::multiply: size mismatch");
  std::vector<double> y(n_rows);
  multiply(x.data(), y.data());
  return y;
}

int CsrMatrix::find(int row, int col) const {
  const int lo = row_ptr[row], hi = row_ptr[row + 1];
  auto it = std::lower_bound(col_idx.begin() + lo, col_idx.begin() + hi, col);
  if (it != col_idx.begin() + hi && *it == col) return static_cast<int>(it - col_idx.begin());
  return -1;
}

void CooBuilder::append(CooBuilder&& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  other.entries_.clear();
}

CsrMatrix CooBuilder::to_csr() && {
  // Stable global sort; summing duplicates in sorted order keeps the merge
  // bitwise reproducible for any thread partition of the assembly loop.
  std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.n_rows = n_rows_;
  m.n_cols = n_cols_;
  m.row_ptr.assign(n_rows_ + 1, 0);
  size_t i = 0;
  while (i < entries_.size()) {
    const int r = entries_[i].row, c = entries_[i].col;
    double s = 0.0;
    while (i < entries_.size() && entries_[i].row == r && entries_[i].col == c) s += entries_[i++].val;
    m.col_idx.push_back(c);
    m.vals.push_back(s);
    ++m.row_ptr[r + 1];
  }
  for (int r = 0; r < n_rows_; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  entries_.clear();
  entries_.shrink_to_fit();
  return m;
}

void write_matrix_market(const CsrMatrix& a, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_rows << ' ' << a.n_cols << ' ' << a.nnz() << '\n';
  out.precision(17);
  for (int i = 0; i < a.n_rows; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      out << i + 1 << ' ' << a.col_idx[k] + 1 << ' ' << a.vals[k] << '\n';
}

CsrMatrix read_matrix_market(std::istream& in) {
  std::string line;
  do {
    if (!std::getline(in, line)) throw std::runtime_error("read_matrix_market: truncated file");
  } while (!line.empty() && line[0] == '%');
  std::istringstream header(line);
  int nr = 0, nc = 0, nnz = 0;
  if (!(header >> nr >> nc >> nnz)) throw std::runtime_error("read_matrix_market: bad size line");
  CooBuilder coo(nr, nc);
  for (int k = 0; k < nnz; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw std::runtime_error("read_matrix_market: bad entry");
    coo.add(i - 1, j - 1, v);
  }
  return std::move(coo).to_csr();
}

DenseMatrix csr_to_dense(const CsrMatrix& a) {
  DenseMatrix d(a.n_rows, a.n_cols);
  for (int i = 0; i < a.n_rows; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) d(i, a.col_idx[k]) = a.vals[k];
  return d;
}

}  // namespace kfem
