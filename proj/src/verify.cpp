#include "mvf/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mvf/efficiency.hpp"
#include "mvf/weights.hpp"

namespace mvf {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

void SuiteReport::add(std::string check, std::string expected, std::string actual) {
  const bool ok = expected == actual;
  checks.push_back({std::move(check), std::move(expected), std::move(actual), ok});
}

void SuiteReport::add_bool(std::string check, bool ok, std::string detail) {
  checks.push_back({std::move(check), "true", ok ? "true" : (detail.empty() ? "false" : detail), ok});
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"sl3", "adjoint-ranks", "lusztig", "tensor-dims", "eta-tables",
                                                 "properties"};
  return names;
}

std::vector<int> random_linear_extension(const MomentGraph& g, std::mt19937_64& rng) {
  const int n = g.num_vertices();
  std::vector<int> pending(n, 0);
  for (const auto& e : g.edges()) ++pending[e.upper];
  std::vector<int> ready, order;
  for (int v = 0; v < n; ++v)
    if (pending[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
    const std::size_t i = pick(rng);
    const int v = ready[i];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(i));
    order.push_back(v);
    for (int e : g.incident(v))
      if (g.edge(e).lower == v && --pending[g.edge(e).upper] == 0) ready.push_back(g.edge(e).upper);
  }
  return order;
}

std::string multiplicity_matrix_violation(const MultiplicityMatrix& m, const RootSystem& rs) {
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const Coweight& alpha = m.rows[r];
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      const Coweight& beta = m.columns[c];
      const std::int64_t v = m.entries[r][c];
      if (v < 0) return "negative entry at (" + alpha.to_string() + ", " + beta.to_string() + ")";
      if (beta == alpha && v != 1) return "diagonal entry at " + alpha.to_string() + " is " + std::to_string(v);
      if (v != 0 && !rs.dominance_leq(beta, alpha))
        return "entry at (" + alpha.to_string() + ", " + beta.to_string() + ") outside the lower set";
    }
  }
  return {};
}

namespace {

std::string matrix_text(const ExactMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < m.rows(); ++r) {
    os << (r ? "," : "") << '[';
    for (int c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m.at(r, c).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::map<Coweight, int> ranks_by_weight(const MomentGraph& g, const StalkAssignment& s) {
  std::map<Coweight, int> out;
  for (int v = 0; v < g.num_vertices(); ++v) out[g.vertex(v)] = s.at(v).rank();
  return out;
}

std::map<Coweight, std::vector<int>> profiles_by_weight(const MomentGraph& g, const StalkAssignment& s) {
  std::map<Coweight, std::vector<int>> out;
  for (int v = 0; v < g.num_vertices(); ++v) out[g.vertex(v)] = s.at(v).profile();
  return out;
}

SuiteReport suite_sl3(const SuiteOptions& opts) {
  SuiteReport rep{"sl3", {}};
  RootSystem rs = RootSystem::build(RootType::A, 2);
  TransitionRequest req;
  req.lambda = rs.fundamental(0);
  req.mu = rs.fundamental(1);
  req.weight = Coweight::zero(2);
  req.bmp = opts.bmp;
  req.threads = opts.threads;
  TransitionBundle b = build_transition(rs, req);
  rep.add("A row at nu=0", "[[1,1,1]]", matrix_text(b.A));
  std::vector<std::string> rows;
  for (const auto& w : b.row_weights) rows.push_back(w.to_string());
  rep.add("M rows", "[1,1] [0,0]", rows.size() == 2 ? rows[0] + " " + rows[1] : "?");
  rep.add("M column at origin", "[[2],[1]]", matrix_text(b.M));
  rep.add("C at nu=0", "[[2,2,2],[1,1,1]]", matrix_text(b.core));
  rep.add("rank of C at nu=0", "1", std::to_string(rank(b.core)));
  VerifyReport v = verify_bundle(b);
  for (const auto& c : v.checks) rep.add_bool("bundle " + c.name, c.passed, c.detail);
  return rep;
}

SuiteReport suite_adjoint_ranks(const SuiteOptions& opts) {
  SuiteReport rep{"adjoint-ranks", {}};
  const std::vector<std::pair<RootType, int>> cases = {
      {RootType::A, 1}, {RootType::A, 2}, {RootType::A, 3}, {RootType::A, 4}, {RootType::D, 4}};
  for (auto [type, l] : cases) {
    RootSystem rs = RootSystem::build(type, l);
    Truncation tr{rs, rs.theta()};
    MomentGraph g = build_graph(tr);
    BmpResult res = bmp_stalks(tr, g, opts.bmp);
    rep.add(rs.label() + " origin stalk rank", std::to_string(l),
            std::to_string(res.stalks.at(g.index_of(Coweight::zero(l))).rank()));
  }
  return rep;
}

SuiteReport suite_lusztig(const SuiteOptions& opts) {
  SuiteReport rep{"lusztig", {}};
  for (int l = 1; l <= 3; ++l) {
    RootSystem rs = RootSystem::build(RootType::A, l);
    Truncation tr{rs, rs.theta()};
    MomentGraph g = build_graph(tr);
    BmpResult res = bmp_stalks(tr, g, opts.bmp);
    for (int v = 0; v < g.num_vertices(); ++v) {
      QPolynomial q = weight_multiplicity(tr.lambda, g.vertex(v), rs, true);
      rep.add(rs.label() + " vertex " + g.vertex(v).to_string() + " (q-analog " + q.to_string() + ")",
              std::to_string(q.at_one()), std::to_string(res.stalks.at(v).rank()));
    }
  }
  return rep;
}

SuiteReport suite_tensor_dims(const SuiteOptions&) {
  SuiteReport rep{"tensor-dims", {}};
  std::vector<std::pair<RootType, int>> cases;
  for (int l = 1; l <= 12; ++l) cases.emplace_back(RootType::A, l);
  for (int l = 3; l <= 12; ++l) cases.emplace_back(RootType::D, l);
  for (int l = 6; l <= 8; ++l) cases.emplace_back(RootType::E, l);
  for (auto [type, l] : cases) {
    RootSystem rs = RootSystem::build(type, l);
    const std::int64_t expected = static_cast<std::int64_t>(l) * l + rs.num_roots();
    const Coweight theta = rs.theta(), zero = Coweight::zero(l);
    rep.add(rs.label() + " dim (theta x theta)_0", std::to_string(expected),
            std::to_string(tensor_weight_dim(theta, theta, zero, rs)));
    if (l <= 4) {
      // Direct convolution of the adjoint weight multiset.
      auto weights = rs.adjoint_weights();
      std::int64_t direct = 0;
      for (const auto& s : weights)
        for (const auto& t : weights)
          if ((s + t).is_zero()) ++direct;
      rep.add(rs.label() + " direct convolution", std::to_string(expected), std::to_string(direct));
    }
  }
  RootSystem e6 = RootSystem::build(RootType::E, 6);
  rep.add("E6 dim (78 x 78)_0", "108",
          std::to_string(tensor_weight_dim(e6.theta(), e6.theta(), Coweight::zero(6), e6)));
  return rep;
}

SuiteReport suite_eta_tables(const SuiteOptions& opts) {
  SuiteReport rep{"eta-tables", {}};
  rep.add("E6 bound", "1/18", eta_bound(RootType::E, 6).to_string());
  rep.add("E7 bound", "1/25", eta_bound(RootType::E, 7).to_string());
  rep.add("E8 bound", "1/38", eta_bound(RootType::E, 8).to_string());
  for (int l = 1; l <= 8; ++l)
    rep.add("A" + std::to_string(l) + " bound", Rational(1, 2 * l + 1).to_string(), eta_bound(RootType::A, l).to_string());
  for (int l = 3; l <= 8; ++l)
    rep.add("D" + std::to_string(l) + " bound", Rational(1, 3 * l - 2).to_string(), eta_bound(RootType::D, l).to_string());
  const Rational e6 = eta_bound(RootType::E, 6), e7 = eta_bound(RootType::E, 7), e8 = eta_bound(RootType::E, 8);
  rep.add_bool("E series strictly decreasing", e6 > e7 && e7 > e8);
  rep.add_bool("A6 bound 1/13 exceeds E6 bound 1/18", eta_bound(RootType::A, 6) == Rational(1, 13) && eta_bound(RootType::A, 6) > e6);
  std::string why;
  auto records = series_report(8, NumeratorMode::Analytic, opts.bmp, opts.threads);
  rep.add_bool("A and D series strictly decreasing", series_strictly_decreasing(records, &why), why);
  rep.add_bool("A1000 bound below 1/2000", eta_bound(RootType::A, 1000) < Rational(1, 2000));
  return rep;
}

SuiteReport suite_properties(const SuiteOptions& opts) {
  SuiteReport rep{"properties", {}};
  struct Case {
    RootType type;
    int rank;
    std::vector<int> lambda;  // empty: theta
  };
  const std::vector<Case> cases = {{RootType::A, 1, {}},        {RootType::A, 2, {}},     {RootType::A, 3, {}},
                                   {RootType::A, 4, {}},        {RootType::D, 4, {}},     {RootType::A, 2, {2, 2}},
                                   {RootType::A, 2, {3, 0}},    {RootType::A, 3, {0, 2, 0}}, {RootType::A, 3, {1, 0, 0}}};
  std::mt19937_64 rng(20240601);
  for (const auto& c : cases) {
    RootSystem rs = RootSystem::build(c.type, c.rank);
    Truncation tr{rs, c.lambda.empty() ? rs.theta() : Coweight(c.lambda)};
    const std::string tag = rs.label() + " " + tr.lambda.to_string();
    MomentGraph g = build_graph(tr);
    rep.add_bool(tag + " GKM label independence", gkm_independent(g));

    BmpResult base = bmp_stalks(tr, g, opts.bmp);
    BmpOptions wider = opts.bmp;
    wider.degree_bound = base.degree_bound + 1;
    wider.escalate = false;
    BmpResult more = bmp_stalks(tr, g, wider);
    rep.add_bool(tag + " degree-bound stability (D=" + std::to_string(base.degree_bound) + " vs D+1)",
                 profiles_by_weight(g, base.stalks) == profiles_by_weight(g, more.stalks));

    const auto reference = ranks_by_weight(g, base.stalks);
    bool invariant = true;
    for (int trial = 0; trial < 5; ++trial) {
      MomentGraph h = g.reordered(random_linear_extension(g, rng));
      BmpOptions o = opts.bmp;
      o.degree_bound = base.degree_bound;
      if (ranks_by_weight(h, bmp_stalks(tr, h, o).stalks) != reference) invariant = false;
    }
    rep.add_bool(tag + " order-extension invariance (5 random extensions)", invariant);

    MultiplicityMatrix mm = multiplicity_matrix(tr, opts.bmp, opts.threads);
    const std::string violation = multiplicity_matrix_violation(mm, rs);
    rep.add_bool(tag + " M unitriangular, non-negative, integral", violation.empty(), violation);
    bool sparsity = true;
    for (std::size_t col = 0; col < mm.columns.size(); ++col) {
      std::int64_t nonzero = 0, total = 0;
      for (std::size_t r = 0; r < mm.rows.size(); ++r) {
        nonzero += mm.entries[r][col] != 0;
        total += mm.entries[r][col];
      }
      if (nonzero > total) sparsity = false;
    }
    rep.add_bool(tag + " total-sheaf sparsity bound", sparsity);
    std::int64_t top_row = 0;
    for (auto v : mm.entries[mm.row_index(tr.lambda)]) top_row += v;
    std::int64_t dim = 0;
    for (const auto& [w, m] : weight_table(tr.lambda, rs)) dim += m;
    rep.add(tag + " top row sum equals dim V_lambda", std::to_string(dim), std::to_string(top_row));
  }

  // Bundles built from computed stalks.
  struct BundleCase {
    RootType type;
    int rank;
    std::vector<int> lambda, mu;
  };
  const std::vector<BundleCase> bundles = {{RootType::A, 1, {2}, {2}},
                                           {RootType::A, 2, {1, 0}, {0, 1}},
                                           {RootType::A, 2, {1, 1}, {1, 1}},
                                           {RootType::A, 3, {1, 0, 0}, {0, 0, 1}},
                                           {RootType::A, 2, {2, 0}, {1, 0}}};
  for (const auto& bc : bundles) {
    RootSystem rs = RootSystem::build(bc.type, bc.rank);
    TransitionRequest req;
    req.lambda = Coweight(bc.lambda);
    req.mu = Coweight(bc.mu);
    req.bmp = opts.bmp;
    req.threads = opts.threads;
    TransitionBundle b = build_transition(rs, req);
    VerifyReport v = verify_bundle(b);
    const std::string tag = rs.label() + " " + req.lambda.to_string() + "x" + req.mu.to_string();
    for (const auto& c : v.checks) rep.add_bool(tag + " " + c.name, c.passed, c.detail);
  }

  // Constructed and randomized bundles for the monomial-column property.
  {
    SpecializationMatrix a;
    a.rows = {Coweight({0}), Coweight({1}), Coweight({2})};
    std::vector<SparseVec> cols;
    for (int k = 0; k < 6; ++k) {
      a.columns.push_back({Coweight({k}), Coweight({0}), 0});
      cols.push_back({{k % 3, Rational(1)}});
    }
    a.entries = ExactMatrix::from_columns(3, cols);
    TransitionBundle b = compose_C({}, a.rows, ExactMatrix::identity(3), a, {});
    VerifyReport v = verify_bundle(b);
    rep.add_bool("identity-M bundle: every column monomial", v.all_passed() && b.core == b.A);
  }
  std::uniform_int_distribution<int> small(0, 3), coin(0, 2);
  bool random_ok = true;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4, k = 4 + trial % 5;
    ExactMatrix M(n, n);
    for (int r = 0; r < n; ++r) {
      M.set(r, r, Rational(1));
      for (int c = 0; c < r; ++c)
        if (coin(rng) == 0) M.set(r, c, Rational(small(rng)));
    }
    SpecializationMatrix a;
    for (int r = 0; r < n; ++r) a.rows.push_back(Coweight({r}));
    std::vector<SparseVec> cols;
    for (int c = 0; c < k; ++c) {
      std::uniform_int_distribution<int> row(0, n - 1);
      a.columns.push_back({Coweight({c}), Coweight({0}), 0});
      cols.push_back({{row(rng), Rational(1)}});
    }
    a.entries = ExactMatrix::from_columns(n, cols);
    if (!verify_bundle(compose_C({}, a.rows, M, a, {})).all_passed()) random_ok = false;
  }
  rep.add_bool("randomized bundles satisfy all bundle checks (40 trials)", random_ok);
  return rep;
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "sl3") return suite_sl3(opts);
  if (name == "adjoint-ranks") return suite_adjoint_ranks(opts);
  if (name == "lusztig") return suite_lusztig(opts);
  if (name == "tensor-dims") return suite_tensor_dims(opts);
  if (name == "eta-tables") return suite_eta_tables(opts);
  if (name == "properties") return suite_properties(opts);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace mvf
