#include "mvf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mvf/bmp.hpp"
#include "mvf/efficiency.hpp"
#include "mvf/moment_graph.hpp"
#include "mvf/root_system.hpp"
#include "mvf/transition.hpp"
#include "mvf/verify.hpp"
#include "mvf/weights.hpp"

namespace mvf {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemChoice {
  std::string type = "A";
  int rank = 2;
};

struct Config {
  int threads = 1;
  std::int64_t max_system = BmpOptions{}.size_cap;
  std::string output;

  SystemChoice sys;
  bool json = false;
  bool csv = false;
  bool q = false;
  bool decompose = false;
  std::string highest = "theta";
  std::string lambda = "theta";
  std::string mu = "theta";
  std::string weight;
  std::string coweight = "theta";
  std::string vertex;
  std::string format = "dot";
  std::string q_mode = "unit";
  std::string p_values;
  std::string alpha;
  std::string series;
  std::string mode = "analytic";
  std::string suite = "all";
  std::optional<int> degree_bound;
  int max_rank = 8;
};

int default_threads() {
  if (const char* env = std::getenv("MVF_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

RootSystem make_system(const SystemChoice& s) {
  try {
    return RootSystem::build(parse_root_type(s.type), s.rank);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Coweight resolve(const RootSystem& rs, const std::string& name) {
  try {
    return rs.parse_coweight(name);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Coweight resolve_dominant(const RootSystem& rs, const std::string& name) {
  Coweight w = resolve(rs, name);
  if (!rs.is_dominant(w)) throw UsageError("coweight '" + name + "' is not dominant");
  return w;
}

BmpOptions bmp_options(const Config& c) {
  BmpOptions o;
  o.size_cap = c.max_system;
  o.degree_bound = c.degree_bound;
  return o;
}

Json rational_json(const Rational& r) {
  if (r.is_integer() && r.is_small()) return r.small_num();
  return r.to_string();
}

Json labels_json(const Coweight& w) { return w.labels; }

Json matrix_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rational_json(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

void print_matrix(std::ostream& out, const std::vector<std::vector<std::string>>& cells, const std::string& indent) {
  std::size_t width = 1;
  for (const auto& row : cells)
    for (const auto& c : row) width = std::max(width, c.size());
  for (const auto& row : cells) {
    out << indent;
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << std::setw(static_cast<int>(width)) << row[i];
    out << '\n';
  }
}

std::vector<std::vector<std::string>> cells_of(const ExactMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) cells[r].push_back(m.at(r, c).to_string());
  return cells;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int cmd_roots(const Config& c, std::ostream& out) {
  RootSystem rs = make_system(c.sys);
  if (c.json) {
    Json j;
    j["type"] = std::string(1, type_letter(rs.type()));
    j["rank"] = rs.rank();
    j["num_roots"] = rs.num_roots();
    j["theta"] = labels_json(rs.theta());
    j["cartan"] = rs.cartan_matrix();
    Json pos = Json::array();
    for (const auto& r : rs.positive_roots()) pos.push_back(r.coeffs);
    j["positive_roots"] = pos;
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "system: " << rs.label() << '\n';
  out << "rank: " << rs.rank() << '\n';
  out << "roots: " << rs.num_roots() << '\n';
  out << "positive roots: " << rs.positive_roots().size() << '\n';
  out << "theta: " << rs.theta().to_string() << " (root coordinates " << join_ints(rs.highest_root().coeffs) << ")\n";
  out << "cartan matrix:\n";
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rs.cartan_matrix()) {
    cells.emplace_back();
    for (int v : row) cells.back().push_back(std::to_string(v));
  }
  print_matrix(out, cells, "  ");
  return 0;
}

int cmd_mult(const Config& c, std::ostream& out) {
  RootSystem rs = make_system(c.sys);
  const Coweight lambda = resolve_dominant(rs, c.highest);
  const Coweight nu = resolve(rs, c.weight.empty() ? "zero" : c.weight);
  QPolynomial m = weight_multiplicity(lambda, nu, rs, c.q);
  if (c.json) {
    Json j;
    j["highest"] = labels_json(lambda);
    j["weight"] = labels_json(nu);
    j["multiplicity"] = m.at_one();
    if (c.q) j["q_analog"] = m.to_string();
    out << j.dump(2) << '\n';
  } else if (c.q) {
    out << m.to_string() << '\n';
  } else {
    out << m.at_one() << '\n';
  }
  return 0;
}

int cmd_tensor(const Config& c, std::ostream& out) {
  RootSystem rs = make_system(c.sys);
  const Coweight lambda = resolve_dominant(rs, c.lambda);
  const Coweight mu = resolve_dominant(rs, c.mu);
  const Coweight nu = resolve(rs, c.weight.empty() ? "zero" : c.weight);
  const std::int64_t dim = tensor_weight_dim(lambda, mu, nu, rs);
  std::map<Coweight, std::int64_t> parts;
  if (c.decompose) parts = tensor_decompose(lambda, mu, rs);
  if (c.json) {
    Json j;
    j["lambda"] = labels_json(lambda);
    j["mu"] = labels_json(mu);
    j["weight"] = labels_json(nu);
    j["dim"] = dim;
    if (c.decompose) {
      Json d = Json::array();
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) d.push_back({{"highest", it->first.labels}, {"multiplicity", it->second}});
      j["decomposition"] = d;
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  out << dim << '\n';
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) out << "V" << it->first.to_string() << ": " << it->second << '\n';
  return 0;
}

int cmd_graph(const Config& c, std::ostream& out) {
  RootSystem rs = make_system(c.sys);
  Truncation tr{rs, resolve_dominant(rs, c.coweight)};
  if (c.format != "dot" && c.format != "json") throw UsageError("unknown graph format '" + c.format + "'");
  MomentGraph g = build_graph(tr);
  out << export_graph(g, c.format);
  if (c.format == "json") out << '\n';
  return 0;
}

std::vector<int> sorted_degrees(const Stalk& s) {
  std::vector<int> d = s.degrees;
  std::sort(d.begin(), d.end());
  return d;
}

int cmd_stalks(const Config& c, std::ostream& out) {
  RootSystem rs = make_system(c.sys);
  Truncation tr{rs, resolve_dominant(rs, c.coweight)};
  MomentGraph g = build_graph(tr);
  std::vector<int> which;
  if (c.vertex.empty()) {
    for (int v = g.top(); v >= 0; --v) which.push_back(v);
  } else {
    const int v = g.index_of(resolve(rs, c.vertex));
    if (v < 0) throw UsageError("'" + c.vertex + "' is not a vertex of the truncation");
    which.push_back(v);
  }
  BmpResult res = bmp_stalks(tr, g, bmp_options(c));
  if (c.json) {
    Json j;
    j["coweight"] = labels_json(tr.lambda);
    j["degree_bound"] = res.degree_bound;
    Json list = Json::array();
    for (int v : which) {
      const Stalk& s = res.stalks.at(v);
      list.push_back({{"vertex", g.vertex(v).labels}, {"rank", s.rank()}, {"degrees", sorted_degrees(s)}});
    }
    j["stalks"] = list;
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "truncation " << rs.label() << " " << tr.lambda.to_string() << ", degree bound " << res.degree_bound << '\n';
  for (int v : which) {
    const Stalk& s = res.stalks.at(v);
    out << g.vertex(v).to_string() << "  rank " << s.rank() << "  degrees [" << join_ints(sorted_degrees(s)) << "]\n";
  }
  return 0;
}

int cmd_mmatrix(const Config& c, std::ostream& out) {
  RootSystem rs = make_system(c.sys);
  Truncation tr{rs, resolve_dominant(rs, c.coweight)};
  MultiplicityMatrix m = multiplicity_matrix(tr, bmp_options(c), c.threads);
  if (c.json) {
    Json j;
    Json rows = Json::array(), cols = Json::array();
    for (const auto& r : m.rows) rows.push_back(r.labels);
    for (const auto& col : m.columns) cols.push_back(col.labels);
    j["rows"] = rows;
    j["columns"] = cols;
    j["entries"] = m.entries;
    j["degree_bound"] = m.degree_bound;
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "rows (dominant alpha):";
  for (const auto& r : m.rows) out << ' ' << r.to_string();
  out << "\ncolumns (vertices):";
  for (const auto& col : m.columns) out << ' ' << col.to_string();
  out << '\n';
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : m.entries) {
    cells.emplace_back();
    for (auto v : row) cells.back().push_back(std::to_string(v));
  }
  print_matrix(out, cells, "  ");
  return 0;
}

std::vector<Rational> parse_p(const std::string& text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception& e) {
      throw UsageError("bad --p entry '" + item + "'");
    }
  }
  return out;
}

int cmd_transition(const Config& c, std::ostream& out) {
  RootSystem rs = make_system(c.sys);
  TransitionRequest req;
  req.lambda = resolve_dominant(rs, c.lambda);
  req.mu = resolve_dominant(rs, c.mu);
  if (!c.weight.empty()) req.weight = resolve(rs, c.weight);
  if (c.q_mode == "unit") {
    req.q_mode = EulerMode::Unit;
  } else if (c.q_mode == "symbolic") {
    req.q_mode = EulerMode::Symbolic;
  } else {
    throw UsageError("unknown --q-mode '" + c.q_mode + "'");
  }
  req.P = parse_p(c.p_values);
  req.bmp = bmp_options(c);
  req.threads = c.threads;
  TransitionBundle b = build_transition(rs, req);
  VerifyReport v = verify_bundle(b);

  std::vector<std::vector<std::string>> c_cells(b.core.rows());
  for (int r = 0; r < b.core.rows(); ++r)
    for (int col = 0; col < b.core.cols(); ++col) c_cells[r].push_back(b.c_entry(r, col));

  if (c.json) {
    Json j;
    Json p = Json::array();
    for (const auto& x : b.P) p.push_back(rational_json(x));
    j["P"] = p;
    Json rows = Json::array(), special = Json::array(), generic = Json::array(), q = Json::array();
    for (const auto& w : b.row_weights) rows.push_back(w.labels);
    for (const auto& w : b.special) special.push_back(w.labels);
    for (const auto& g : b.generic) generic.push_back({{"sigma", g.sigma.labels}, {"tau", g.tau.labels}, {"copy", g.copy}});
    for (const auto& e : b.Q) q.push_back(e.to_string());
    j["row_weights"] = rows;
    j["special"] = special;
    j["generic"] = generic;
    j["M_block"] = matrix_json(b.M);
    j["A_block"] = matrix_json(b.A);
    j["Q"] = q;
    Json cb = Json::array();
    for (int r = 0; r < b.core.rows(); ++r) {
      Json row = Json::array();
      for (int col = 0; col < b.core.cols(); ++col) {
        if (b.Q[col].is_unit() || b.core.at(r, col).is_zero())
          row.push_back(rational_json(b.core.at(r, col)));
        else
          row.push_back(c_cells[r][col]);
      }
      cb.push_back(row);
    }
    j["C_block"] = cb;
    Json checks;
    for (const auto& chk : v.checks) checks[chk.name] = chk.passed;
    j["checks"] = checks;
    out << j.dump(2) << '\n';
  } else {
    out << "rows:";
    for (const auto& w : b.row_weights) out << ' ' << w.to_string();
    out << "\nspecial:";
    for (const auto& w : b.special) out << ' ' << w.to_string();
    out << "\ngeneric:";
    for (const auto& g : b.generic) out << ' ' << g.sigma.to_string() << '+' << g.tau.to_string();
    out << "\nP:";
    for (const auto& x : b.P) out << ' ' << x.to_string();
    out << "\nM:\n";
    print_matrix(out, cells_of(b.M), "  ");
    out << "A:\n";
    print_matrix(out, cells_of(b.A), "  ");
    out << "C:\n";
    print_matrix(out, c_cells, "  ");
    for (const auto& chk : v.checks)
      out << (chk.passed ? "PASS " : "FAIL ") << chk.name << (chk.detail.empty() ? "" : ": " + chk.detail) << '\n';
  }
  return v.all_passed() ? 0 : 1;
}

Json record_json(const EfficiencyRecord& r) {
  Json j;
  j["type"] = std::string(1, type_letter(r.type));
  j["rank"] = r.rank;
  j["num_roots"] = r.num_roots;
  j["geometric_rank"] = r.geometric_rank;
  j["combinatorial_dim"] = r.combinatorial_dim;
  j["eta"] = r.eta.to_string();
  j["bound"] = r.bound.to_string();
  j["source"] = r.source;
  return j;
}

int cmd_eta(const Config& c, std::ostream& out) {
  NumeratorMode mode;
  if (c.mode == "analytic") {
    mode = NumeratorMode::Analytic;
  } else if (c.mode == "stalk") {
    mode = NumeratorMode::Stalk;
  } else {
    throw UsageError("unknown --mode '" + c.mode + "'");
  }
  const BmpOptions opts = bmp_options(c);

  if (!c.series.empty()) {
    std::optional<RootType> only;
    if (c.series != "all") {
      try {
        only = parse_root_type(c.series);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
    }
    if (c.max_rank < 1) throw UsageError("--max-rank must be at least 1");
    auto records = series_report(c.max_rank, mode, opts, c.threads);
    std::erase_if(records, [&](const EfficiencyRecord& r) { return only && r.type != *only; });
    std::string why;
    const bool decreasing = series_strictly_decreasing(records, &why);
    if (c.json) {
      Json j;
      Json rows = Json::array();
      for (const auto& r : records) rows.push_back(record_json(r));
      j["records"] = rows;
      j["strictly_decreasing"] = decreasing;
      out << j.dump(2) << '\n';
    } else if (c.csv) {
      out << "type,rank,num_roots,geometric_rank,combinatorial_dim,eta,bound,source\n";
      for (const auto& r : records)
        out << type_letter(r.type) << ',' << r.rank << ',' << r.num_roots << ',' << r.geometric_rank << ','
            << r.combinatorial_dim << ',' << r.eta.to_string() << ',' << r.bound.to_string() << ",\"" << r.source
            << "\"\n";
    } else {
      out << std::left << std::setw(6) << "sys" << std::setw(8) << "roots" << std::setw(8) << "l" << std::setw(8)
          << "dim" << std::setw(8) << "eta" << "source\n";
      for (const auto& r : records)
        out << std::setw(6) << r.label() << std::setw(8) << r.num_roots << std::setw(8) << r.geometric_rank
            << std::setw(8) << r.combinatorial_dim << std::setw(8) << r.eta.to_string() << r.source << '\n';
      out << std::right << "strictly decreasing within each family: " << (decreasing ? "yes" : "no") << '\n';
    }
    return 0;
  }

  RootSystem rs = make_system(c.sys);
  if (!c.alpha.empty()) {
    const Coweight alpha = resolve_dominant(rs, c.alpha);
    const Coweight nu = resolve(rs, c.weight.empty() ? "zero" : c.weight);
    const Coweight mu = resolve_dominant(rs, c.mu);
    Rational value;
    std::string kind;
    if (!c.lambda.empty()) {
      value = eta_rep(alpha, nu, resolve_dominant(rs, c.lambda), mu, rs, opts);
      kind = "rep";
    } else {
      value = eta_graph(alpha, nu, mu, rs, opts);
      kind = "graph";
    }
    if (c.json) {
      Json j;
      j["kind"] = kind;
      j["alpha"] = labels_json(alpha);
      j["weight"] = labels_json(nu);
      j["eta"] = value.to_string();
      out << j.dump(2) << '\n';
    } else {
      out << value.to_string() << '\n';
    }
    return 0;
  }
  EfficiencyRecord r = efficiency_record(rs.type(), rs.rank(), mode, opts);
  if (c.json)
    out << record_json(r).dump(2) << '\n';
  else
    out << r.eta.to_string() << '\n';
  return 0;
}

int cmd_verify(const Config& c, std::ostream& out) {
  std::vector<std::string> names;
  if (c.suite == "all") {
    names = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), c.suite) != suite_names().end()) {
    names = {c.suite};
  } else {
    throw UsageError("unknown suite '" + c.suite + "'");
  }
  SuiteOptions opts;
  opts.bmp = bmp_options(c);
  opts.threads = c.threads;
  bool all = true;
  Json suites = Json::array();
  for (const auto& n : names) {
    SuiteReport rep = run_suite(n, opts);
    all = all && rep.passed();
    if (c.json) {
      Json checks = Json::array();
      for (const auto& chk : rep.checks)
        checks.push_back({{"name", chk.name}, {"expected", chk.expected}, {"actual", chk.actual}, {"passed", chk.passed}});
      suites.push_back({{"suite", rep.name}, {"passed", rep.passed()}, {"checks", checks}});
      continue;
    }
    out << "suite " << rep.name << '\n';
    for (const auto& chk : rep.checks) {
      out << "  " << (chk.passed ? "PASS " : "FAIL ") << chk.name;
      if (chk.expected != "true" || !chk.passed) out << ": expected " << chk.expected << ", actual " << chk.actual;
      out << '\n';
    }
    const auto failed = std::count_if(rep.checks.begin(), rep.checks.end(), [](const SuiteCheck& x) { return !x.passed; });
    out << "  " << (failed ? "FAILED " + std::to_string(failed) + " of " : "all passed, ")
        << rep.checks.size() << " checks\n";
  }
  if (c.json) {
    Json j;
    j["suites"] = suites;
    j["passed"] = all;
    out << j.dump(2) << '\n';
  }
  return all ? 0 : 1;
}

void add_system(CLI::App* sub, Config& c) {
  sub->add_option("--type", c.sys.type, "Root system type: A, D or E");
  sub->add_option("--rank", c.sys.rank, "Rank of the root system");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  c.threads = default_threads();
  CLI::App app{"Moment graphs, stalk ranks and transition matrices for simply-laced root systems", "mvf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", c.threads, "Worker threads (default from MVF_THREADS, else 1)")->check(CLI::PositiveNumber);
  app.add_option("--max-system", c.max_system, "Refuse stalk computations whose estimated system size exceeds this");
  app.add_option("--output", c.output, "Write output to this file");

  auto* roots = app.add_subcommand("roots", "Root system data");
  add_system(roots, c);
  roots->add_flag("--json", c.json);

  auto* mult = app.add_subcommand("mult", "Weight multiplicity m_lambda(nu)");
  add_system(mult, c);
  mult->add_option("--highest", c.highest, "Highest weight");
  mult->add_option("--weight", c.weight, "Weight nu (default zero)");
  mult->add_flag("--q", c.q, "Print the q-analog");
  mult->add_flag("--json", c.json);

  auto* tensor = app.add_subcommand("tensor-dim", "Weight-space dimension of V_lambda x V_mu");
  add_system(tensor, c);
  tensor->add_option("--lambda", c.lambda);
  tensor->add_option("--mu", c.mu);
  tensor->add_option("--weight", c.weight, "Weight nu (default zero)");
  tensor->add_flag("--decompose", c.decompose, "Also list irreducible constituents");
  tensor->add_flag("--json", c.json);

  auto* graph = app.add_subcommand("graph", "Moment graph of a truncation");
  add_system(graph, c);
  graph->add_option("--coweight", c.coweight);
  graph->add_option("--format", c.format, "dot or json");

  auto* stalks = app.add_subcommand("stalks", "Stalk ranks of the canonical sheaf");
  add_system(stalks, c);
  stalks->add_option("--coweight", c.coweight);
  stalks->add_option("--vertex", c.vertex, "Only this vertex");
  stalks->add_option("--degree-bound", c.degree_bound, "Starting degree bound")->check(CLI::PositiveNumber);
  stalks->add_flag("--json", c.json);

  auto* mmatrix = app.add_subcommand("mmatrix", "Stalk-rank matrix over dominant alpha <= lambda");
  add_system(mmatrix, c);
  mmatrix->add_option("--coweight", c.coweight);
  mmatrix->add_option("--degree-bound", c.degree_bound)->check(CLI::PositiveNumber);
  mmatrix->add_flag("--json", c.json);

  auto* transition = app.add_subcommand("transition", "Factorization C = P M A Q^-1");
  add_system(transition, c);
  transition->add_option("--lambda", c.lambda);
  transition->add_option("--mu", c.mu);
  transition->add_option("--weight", c.weight, "Restrict to one target weight");
  transition->add_option("--q-mode", c.q_mode, "unit or symbolic");
  transition->add_option("--p", c.p_values, "Comma-separated diagonal of P, top row first");
  transition->add_flag("--json", c.json);

  auto* eta = app.add_subcommand("eta", "Geometric efficiency");
  add_system(eta, c);
  eta->add_option("--series", c.series, "all, A, D or E");
  eta->add_option("--max-rank", c.max_rank);
  eta->add_option("--mode", c.mode, "analytic or stalk");
  eta->add_option("--alpha", c.alpha, "Truncation for a single ratio");
  eta->add_option("--weight", c.weight);
  eta->add_option("--lambda", c.lambda, "With --alpha: representation-theoretic denominator");
  eta->add_option("--mu", c.mu);
  auto* eta_json = eta->add_flag("--json", c.json);
  eta->add_flag("--csv", c.csv)->excludes(eta_json);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", c.suite, "sl3, adjoint-ranks, lusztig, tensor-dims, eta-tables, properties or all");
  verify->add_flag("--json", c.json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  // --lambda has no default for eta: its presence selects the denominator.
  if (eta->parsed() && eta->count("--lambda") == 0) c.lambda.clear();

  std::ostringstream buffer;
  int code = 0;
  try {
    if (roots->parsed()) code = cmd_roots(c, buffer);
    else if (mult->parsed()) code = cmd_mult(c, buffer);
    else if (tensor->parsed()) code = cmd_tensor(c, buffer);
    else if (graph->parsed()) code = cmd_graph(c, buffer);
    else if (stalks->parsed()) code = cmd_stalks(c, buffer);
    else if (mmatrix->parsed()) code = cmd_mmatrix(c, buffer);
    else if (transition->parsed()) code = cmd_transition(c, buffer);
    else if (eta->parsed()) code = cmd_eta(c, buffer);
    else if (verify->parsed()) code = cmd_verify(c, buffer);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const SystemTooLarge& e) {
    err << "refused: estimated linear system size " << e.estimate() << " exceeds the cap " << e.cap()
        << " (raise --max-system to try anyway)\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (c.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.output, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "error: cannot write " << c.output << '\n';
      return 1;
    }
  }
  return code;
}

}  // namespace mvf
