#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "mvf/rational.hpp"

namespace mvf {

struct SparseEntry {
  int col;
  Rational value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse vector with strictly increasing column indices and no stored zeros.
using SparseVec = std::vector<SparseEntry>;

SparseVec sparse_from_dense(const std::vector<Rational>& dense);
std::vector<Rational> dense_from_sparse(const SparseVec& v, int dim);
/// a + scale * b
SparseVec sparse_axpy(const SparseVec& a, const Rational& scale, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Rational& scale);
/// Appends `v` shifted by `offset` columns to `out`; `out` must end before `offset`.
void sparse_append_shifted(SparseVec& out, const SparseVec& v, int offset);

/// Exact rational matrix. Rows are stored sparsely; elimination switches
/// between a sparse-merge and a dense-scratch kernel depending on row density.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols);
  ExactMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static ExactMatrix identity(int n);
  static ExactMatrix from_rows(int cols, std::vector<SparseVec> rows);
  static ExactMatrix from_columns(int rows, const std::vector<SparseVec>& columns);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational at(int r, int c) const;
  void set(int r, int c, const Rational& v);
  const SparseVec& row(int r) const { return data_[r]; }
  std::vector<SparseVec> columns() const;

  std::size_t nonzeros() const;
  double density() const;

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix transpose() const;
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec> data_;
};

/// Incrementally maintained row-echelon basis of a subspace of Q^dim.
///
/// Pivots are restricted to columns below `pivot_limit`; columns at or above
/// the limit ride along as bookkeeping (used to track linear combinations).
class EchelonBasis {
 public:
  explicit EchelonBasis(int dim, int pivot_limit = -1);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Reduces `v` against the basis. The result has zero entries on every
  /// pivot column.
  SparseVec reduce(const SparseVec& v) const;

  /// Inserts `v`. Returns the reduced vector; it is empty on the pivot range
  /// exactly when `v` was dependent (and then the basis is unchanged).
  SparseVec insert(const SparseVec& v);

  /// True if the reduced vector has no entry below the pivot limit.
  bool contains(const SparseVec& v) const;

  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<int>& pivot_columns() const { return pivot_col_of_row_; }

  /// Fully reduced rows (each pivot column is zero outside its own row),
  /// ordered by pivot column.
  std::vector<SparseVec> reduced_rows() const;

 private:
  bool leading_in_range(const SparseVec& v) const;

  int dim_;
  int pivot_limit_;
  std::vector<SparseVec> rows_;
  std::vector<int> pivot_col_of_row_;
  std::vector<int> row_of_pivot_col_;
};

struct RrefResult {
  ExactMatrix reduced;
  int rank = 0;
  std::vector<int> pivot_cols;
};

RrefResult rref(const ExactMatrix& m);
int rank(const ExactMatrix& m);

/// Basis of {v : m v = 0}; size cols - rank.
std::vector<std::vector<Rational>> nullspace_basis(const ExactMatrix& m);

/// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<std::vector<Rational>> solve(const ExactMatrix& m, const std::vector<Rational>& b);

std::vector<Rational> multiply(const ExactMatrix& m, const std::vector<Rational>& v);

}  // namespace mvf
