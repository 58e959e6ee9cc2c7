#include "mvf/transition.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mvf/weights.hpp"

namespace mvf {

SpecializationMatrix build_A(const Coweight& lambda, const Coweight& mu, const RootSystem& rs,
                             const std::optional<Coweight>& weight_filter) {
  if (!rs.is_dominant(lambda) || !rs.is_dominant(mu)) throw std::invalid_argument("build_A: lambda and mu must be dominant");
  WeightTable a = weight_table(lambda, rs);
  WeightTable b = weight_table(mu, rs);
  SpecializationMatrix out;
  if (weight_filter) {
    out.rows.push_back(*weight_filter);
  } else {
    out.rows = weights_of(lambda + mu, rs);
    std::sort(out.rows.begin(), out.rows.end(),
              [&](const Coweight& x, const Coweight& y) { return closure_order_less(rs, x, y); });
  }
  std::map<Coweight, int> row_of;
  for (int i = 0; i < static_cast<int>(out.rows.size()); ++i) row_of[out.rows[i]] = i;
  std::vector<SparseVec> columns;
  for (const auto& [s, ms] : a)
    for (const auto& [t, mt] : b) {
      auto it = row_of.find(s + t);
      if (it == row_of.end()) {
        if (weight_filter) continue;
        throw std::logic_error("build_A: weight sum outside the truncation");
      }
      for (std::int64_t c = 0; c < ms * mt; ++c) {
        out.columns.push_back({s, t, static_cast<int>(c)});
        columns.push_back({{it->second, Rational(1)}});
      }
    }
  out.entries = ExactMatrix::from_columns(static_cast<int>(out.rows.size()), columns);
  return out;
}

EulerEntry EulerEntry::operator*(const EulerEntry& o) const {
  std::map<std::vector<int>, int> merged;
  for (const auto& [f, m] : factors) merged[f] += m;
  for (const auto& [f, m] : o.factors) merged[f] += m;
  EulerEntry out;
  for (auto& [f, m] : merged) out.factors.emplace_back(f, m);
  return out;
}

std::string EulerEntry::to_string() const {
  if (is_unit()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << '*';
    os << '(';
    for (std::size_t k = 0; k < factors[i].first.size(); ++k) os << (k ? "," : "") << factors[i].first[k];
    os << ')';
    if (factors[i].second != 1) os << '^' << factors[i].second;
  }
  return os.str();
}

std::vector<EulerEntry> build_Q(const MomentGraph& g, EulerMode mode) {
  std::vector<EulerEntry> out(g.num_vertices());
  if (mode == EulerMode::Unit) return out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::map<std::vector<int>, int> merged;
    for (int e : g.incident(v)) ++merged[g.edge(e).label];
    for (auto& [f, m] : merged) out[v].factors.emplace_back(f, m);
  }
  return out;
}

std::string TransitionBundle::c_entry(int row, int col) const {
  Rational v = core.at(row, col);
  if (Q.empty() || Q[col].is_unit() || v.is_zero()) return v.to_string();
  return v.to_string() + "/(" + Q[col].to_string() + ")";
}

TransitionBundle compose_C(std::vector<Rational> P, std::vector<Coweight> row_weights, ExactMatrix M,
                           const SpecializationMatrix& A, std::vector<EulerEntry> Q) {
  const int rows = static_cast<int>(row_weights.size());
  if (M.rows() != rows) throw std::invalid_argument("compose_C: M rows do not match the row index set");
  if (M.cols() != A.entries.rows()) throw std::invalid_argument("compose_C: M columns do not match the rows of A");
  if (P.empty()) P.assign(rows, Rational(1));
  if (static_cast<int>(P.size()) != rows) throw std::invalid_argument("compose_C: P has the wrong length");
  if (std::any_of(P.begin(), P.end(), [](const Rational& p) { return p.is_zero(); }))
    throw std::invalid_argument("compose_C: P must be an invertible diagonal");
  if (Q.empty()) Q.assign(A.columns.size(), EulerEntry{});
  if (Q.size() != A.columns.size()) throw std::invalid_argument("compose_C: Q has the wrong length");

  TransitionBundle b;
  b.row_weights = std::move(row_weights);
  b.special = A.rows;
  b.generic = A.columns;
  b.P = std::move(P);
  b.M = std::move(M);
  b.A = A.entries;
  b.Q = std::move(Q);
  ExactMatrix diag(rows, rows);
  for (int i = 0; i < rows; ++i) diag.set(i, i, b.P[i]);
  b.core = diag * (b.M * b.A);
  return b;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string locate(const char* name, int r, int c, const Rational& v) {
  std::ostringstream os;
  os << name << '[' << r << "][" << c << "] = " << v.to_string();
  return os.str();
}

CheckResult check_nonneg_integral(const char* label, const char* name, const ExactMatrix& m) {
  CheckResult out{label, true, ""};
  for (int r = 0; r < m.rows() && out.passed; ++r)
    for (const auto& e : m.row(r))
      if (!e.value.is_integer() || e.value.sign() < 0) {
        out.passed = false;
        out.detail = locate(name, r, e.col, e.value);
        break;
      }
  return out;
}

}  // namespace

VerifyReport verify_bundle(const TransitionBundle& b) {
  VerifyReport report;
  const ExactMatrix MA = b.M * b.A;
  const auto MA_cols = MA.columns();
  const auto M_cols = b.M.columns();
  const auto A_cols = b.A.columns();

  CheckResult a = check_nonneg_integral("nonnegative-integral", "M", b.M);
  if (a.passed) a = check_nonneg_integral("nonnegative-integral", "A", b.A);
  report.checks.push_back(a);

  // rank(M A) <= rank(M), and the rank bound on the zero weight block.
  {
    const int rm = rank(b.M), rma = rank(MA);
    CheckResult c{"rank-composition", rma <= rm, ""};
    c.detail = "rank(MA) = " + std::to_string(rma) + ", rank(M) = " + std::to_string(rm);
    report.checks.push_back(c);
  }
  {
    CheckResult c{"zero-block-rank", true, "no zero weight block"};
    if (b.zero_block) {
      auto it = std::find(b.special.begin(), b.special.end(), *b.zero_block);
      if (it != b.special.end()) {
        const int row = static_cast<int>(it - b.special.begin());
        std::vector<SparseVec> block;
        for (int k = 0; k < b.A.cols(); ++k)
          if (!b.A.at(row, k).is_zero()) block.push_back(MA_cols[k]);
        const int r = rank(ExactMatrix::from_columns(MA.rows(), block));
        c.passed = r <= b.rank;
        c.detail = "rank = " + std::to_string(r) + ", bound = " + std::to_string(b.rank);
      }
    }
    report.checks.push_back(c);
  }
  {
    CheckResult c{"monomial-columns", true, ""};
    int fired = 0;
    for (int nu = 0; nu < b.M.cols() && c.passed; ++nu) {
      const auto& col = M_cols[nu];
      if (col.size() != 1 || !col.front().value.is_one()) continue;
      for (const auto& e : b.A.row(nu)) {
        ++fired;
        if (MA_cols[e.col].size() != 1) {
          c.passed = false;
          c.detail = "C column " + std::to_string(e.col) + " has " + std::to_string(MA_cols[e.col].size()) +
                     " nonzero entries over a standard basis column of M";
          break;
        }
      }
    }
    if (c.passed) c.detail = std::to_string(fired) + " columns checked";
    report.checks.push_back(c);
  }
  {
    CheckResult c{"support", true, ""};
    for (int k = 0; k < MA.cols() && c.passed; ++k)
      for (const auto& e : MA_cols[k]) {
        bool witnessed = false;
        for (const auto& ae : A_cols[k])
          if (!b.M.at(e.col, ae.col).is_zero()) witnessed = true;
        if (!witnessed) {
          c.passed = false;
          c.detail = "C[" + std::to_string(e.col) + "][" + std::to_string(k) + "] has no supporting M, A pair";
          break;
        }
      }
    report.checks.push_back(c);
  }
  {
    CheckResult c{"column-sparsity", true, ""};
    for (int k = 0; k < MA.cols() && c.passed; ++k) {
      Rational bound(0);
      for (const auto& ae : A_cols[k])
        for (const auto& me : M_cols[ae.col]) bound += me.value;
      if (Rational(static_cast<std::int64_t>(MA_cols[k].size())) > bound) {
        c.passed = false;
        c.detail = "C column " + std::to_string(k) + " has " + std::to_string(MA_cols[k].size()) +
                   " nonzeros, bound " + bound.to_string();
      }
    }
    report.checks.push_back(c);
  }
  return report;
}

TransitionBundle build_transition(const RootSystem& rs, const TransitionRequest& req) {
  if (!rs.is_dominant(req.lambda) || !rs.is_dominant(req.mu))
    throw std::invalid_argument("transition: lambda and mu must be dominant");
  Truncation tr{rs, req.lambda + req.mu};
  MultiplicityMatrix mm = multiplicity_matrix(tr, req.bmp, req.threads);
  if (req.weight && mm.column_index(*req.weight) < 0)
    throw std::invalid_argument("transition: " + req.weight->to_string() + " is not a weight of the product");
  SpecializationMatrix A = build_A(req.lambda, req.mu, rs, req.weight);

  std::vector<Coweight> rows(mm.rows.rbegin(), mm.rows.rend());
  ExactMatrix M(static_cast<int>(rows.size()), static_cast<int>(A.rows.size()));
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c) M.set(r, c, Rational(mm.at(rows[r], A.rows[c])));

  std::vector<EulerEntry> Q;
  if (req.q_mode == EulerMode::Symbolic) {
    MomentGraph gl = build_graph({rs, req.lambda});
    MomentGraph gm = build_graph({rs, req.mu});
    auto ql = build_Q(gl, EulerMode::Symbolic);
    auto qm = build_Q(gm, EulerMode::Symbolic);
    for (const auto& k : A.columns) Q.push_back(ql[gl.index_of(k.sigma)] * qm[gm.index_of(k.tau)]);
  }
  TransitionBundle b = compose_C(req.P, std::move(rows), std::move(M), A, std::move(Q));
  b.rank = rs.rank();
  Coweight zero = Coweight::zero(rs.rank());
  if (std::find(b.special.begin(), b.special.end(), zero) != b.special.end()) b.zero_block = zero;
  return b;
}

}  // namespace mvf
