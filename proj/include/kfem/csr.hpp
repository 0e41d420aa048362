// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kfem {

/// Compressed sparse row matrix with sorted unique columns per row.
struct CsrMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> vals;

  int nnz() const { return static_cast<int>(col_idx.size()); }
  /// y = A x. Row-parallel and bitwise reproducible for any thread count.
  void multiply(const double* x, double* y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  /// Position of (row, col) in vals, or -1 when outside the pattern.
  int find(int row, int col) const;
};

/// Accumulates (row, col, value) triples; duplicate entries are summed in
/// a deterministic sorted order, independent of insertion or thread order.
class CooBuilder {
public:
  CooBuilder(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}
  void add(int row, int col, double value) { entries_.push_back({row, col, value}); }
  void append(CooBuilder&& other);
  CsrMatrix to_csr() &&;
  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }

private:
  struct Entry {
    int row;
    int col;
    double val;
  };
  int n_rows_;
  int n_cols_;
  std::vector<Entry> entries_;
};

/// Matrix Market coordinate format (real general), for debugging fixtures.
void write_matrix_market(const CsrMatrix& a, std::ostream& out);
CsrMatrix read_matrix_market(std::istream& in);

class DenseMatrix;
DenseMatrix csr_to_dense(const CsrMatrix& a);

}  // namespace kfem
