#include "mvf/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace mvf {

namespace {

constexpr double kSparseThreshold = 0.10;

}  // namespace

SparseVec sparse_from_dense(const std::vector<Rational>& dense) {
  SparseVec out;
  for (int i = 0; i < static_cast<int>(dense.size()); ++i)
    if (!dense[i].is_zero()) out.push_back({i, dense[i]});
  return out;
}

std::vector<Rational> dense_from_sparse(const SparseVec& v, int dim) {
  std::vector<Rational> out(dim);
  for (const auto& e : v) out.at(e.col) = e.value;
  return out;
}

SparseVec sparse_axpy(const SparseVec& a, const Rational& scale, const SparseVec& b) {
  if (scale.is_zero()) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, scale * b[j].value});
      ++j;
    } else {
      Rational s = a[i].value + scale * b[j].value;
      if (!s.is_zero()) out.push_back({a[i].col, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sparse_scale(const SparseVec& a, const Rational& scale) {
  if (scale.is_zero()) return {};
  SparseVec out = a;
  for (auto& e : out) e.value *= scale;
  return out;
}

void sparse_append_shifted(SparseVec& out, const SparseVec& v, int offset) {
  if (!out.empty() && out.back().col >= offset) throw std::logic_error("sparse_append_shifted: overlap");
  for (const auto& e : v) out.push_back({e.col + offset, e.value});
}

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ExactMatrix: ragged rows");
    data_.push_back(sparse_from_dense(std::vector<Rational>(r)));
  }
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i] = {{i, Rational(1)}};
  return m;
}

ExactMatrix ExactMatrix::from_rows(int cols, std::vector<SparseVec> rows) {
  ExactMatrix m(static_cast<int>(rows.size()), cols);
  for (auto& r : rows)
    if (!r.empty() && r.back().col >= cols) throw std::out_of_range("ExactMatrix::from_rows: column out of range");
  m.data_ = std::move(rows);
  return m;
}

ExactMatrix ExactMatrix::from_columns(int rows, const std::vector<SparseVec>& columns) {
  ExactMatrix m(rows, static_cast<int>(columns.size()));
  for (int c = 0; c < m.cols_; ++c)
    for (const auto& e : columns[c]) {
      if (e.col >= rows) throw std::out_of_range("ExactMatrix::from_columns: row out of range");
      m.data_[e.col].push_back({c, e.value});
    }
  return m;
}

Rational ExactMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("ExactMatrix::at");
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, int col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->value;
  return Rational(0);
}

void ExactMatrix::set(int r, int c, const Rational& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("ExactMatrix::set");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, int col) { return e.col < col; });
  if (it != row.end() && it->col == c) {
    if (v.is_zero())
      row.erase(it);
    else
      it->value = v;
  } else if (!v.is_zero()) {
    row.insert(it, {c, v});
  }
}

std::vector<SparseVec> ExactMatrix::columns() const {
  std::vector<SparseVec> cols(cols_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) cols[e.col].push_back({r, e.value});
  return cols;
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

double ExactMatrix::density() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  return static_cast<double>(nonzeros()) / (static_cast<double>(rows_) * cols_);
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("ExactMatrix: dimension mismatch in product");
  ExactMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r) {
    SparseVec acc;
    for (const auto& e : data_[r]) acc = sparse_axpy(acc, e.value, o.data_[e.col]);
    out.data_[r] = std::move(acc);
  }
  return out;
}

ExactMatrix ExactMatrix::transpose() const { return from_rows(rows_, columns()); }

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(int dim, int pivot_limit)
    : dim_(dim), pivot_limit_(pivot_limit < 0 ? dim : pivot_limit), row_of_pivot_col_(pivot_limit_, -1) {}

SparseVec EchelonBasis::reduce(const SparseVec& v) const {
  if (rows_.empty() || v.empty()) return v;
  std::vector<Rational> scratch(dim_);
  std::vector<char> touched(dim_, 0);
  std::vector<int> touched_cols;
  touched_cols.reserve(v.size() * 4);
  for (const auto& e : v) {
    scratch[e.col] = e.value;
    touched[e.col] = 1;
    touched_cols.push_back(e.col);
  }

  auto subtract_row = [&](int col, auto&& on_touch) {
    const Rational c = scratch[col];
    for (const auto& e : rows_[row_of_pivot_col_[col]]) {
      scratch[e.col] -= c * e.value;
      if (!touched[e.col]) {
        touched[e.col] = 1;
        touched_cols.push_back(e.col);
        on_touch(e.col);
      }
    }
  };

  double density = static_cast<double>(v.size()) / dim_;
  if (density >= kSparseThreshold) {
    for (int col = v.front().col; col < pivot_limit_; ++col)
      if (!scratch[col].is_zero() && row_of_pivot_col_[col] >= 0) subtract_row(col, [](int) {});
  } else {
    std::priority_queue<int, std::vector<int>, std::greater<>> pending;
    for (const auto& e : v)
      if (e.col < pivot_limit_ && row_of_pivot_col_[e.col] >= 0) pending.push(e.col);
    while (!pending.empty()) {
      int col = pending.top();
      pending.pop();
      if (scratch[col].is_zero()) continue;
      subtract_row(col, [&](int c) {
        if (c < pivot_limit_ && row_of_pivot_col_[c] >= 0) pending.push(c);
      });
    }
  }

  std::sort(touched_cols.begin(), touched_cols.end());
  SparseVec out;
  for (int c : touched_cols)
    if (!scratch[c].is_zero()) out.push_back({c, std::move(scratch[c])});
  return out;
}

bool EchelonBasis::leading_in_range(const SparseVec& v) const { return !v.empty() && v.front().col < pivot_limit_; }

SparseVec EchelonBasis::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (!leading_in_range(r)) return r;
  Rational inv = r.front().value.inverse();
  SparseVec row = sparse_scale(r, inv);
  int col = row.front().col;
  row_of_pivot_col_[col] = static_cast<int>(rows_.size());
  pivot_col_of_row_.push_back(col);
  rows_.push_back(std::move(row));
  return r;
}

bool EchelonBasis::contains(const SparseVec& v) const { return !leading_in_range(reduce(v)); }

std::vector<SparseVec> EchelonBasis::reduced_rows() const {
  std::vector<int> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return pivot_col_of_row_[a] < pivot_col_of_row_[b]; });
  std::vector<SparseVec> out;
  std::vector<int> pivots;
  for (int i : order) {
    out.push_back(rows_[i]);
    pivots.push_back(pivot_col_of_row_[i]);
  }
  for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
    for (int j = 0; j < i; ++j) {
      const auto& rj = out[j];
      auto it = std::lower_bound(rj.begin(), rj.end(), pivots[i],
                                 [](const SparseEntry& e, int col) { return e.col < col; });
      if (it != rj.end() && it->col == pivots[i]) {
        Rational c = -it->value;
        out[j] = sparse_axpy(out[j], c, out[i]);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

RrefResult rref(const ExactMatrix& m) {
  EchelonBasis basis(m.cols());
  for (int r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  auto reduced = basis.reduced_rows();
  RrefResult out;
  out.rank = static_cast<int>(reduced.size());
  for (const auto& row : reduced) out.pivot_cols.push_back(row.front().col);
  reduced.resize(m.rows());
  out.reduced = ExactMatrix::from_rows(m.cols(), std::move(reduced));
  return out;
}

int rank(const ExactMatrix& m) {
  EchelonBasis basis(m.cols());
  for (int r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return basis.rank();
}

std::vector<std::vector<Rational>> nullspace_basis(const ExactMatrix& m) {
  RrefResult rr = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int c : rr.pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (int r = 0; r < rr.rank; ++r) {
      Rational a = rr.reduced.at(r, f);
      if (!a.is_zero()) v[rr.pivot_cols[r]] = -a;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Rational>> solve(const ExactMatrix& m, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const int n = m.rows();
  EchelonBasis basis(n + m.cols(), n);
  auto cols = m.columns();
  for (int c = 0; c < m.cols(); ++c) {
    SparseVec v = cols[c];
    v.push_back({n + c, Rational(1)});
    basis.insert(v);
  }
  SparseVec r = basis.reduce(sparse_from_dense(b));
  if (!r.empty() && r.front().col < n) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (const auto& e : r) x[e.col - n] = -e.value;
  return x;
}

std::vector<Rational> multiply(const ExactMatrix& m, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != m.cols()) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<Rational> out(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r)) out[r] += e.value * v[e.col];
  return out;
}

}  // namespace mvf
