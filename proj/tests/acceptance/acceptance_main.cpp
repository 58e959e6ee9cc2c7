#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvf/bmp.hpp"
#include "mvf/cli.hpp"
#include "mvf/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  int criterion;
  bool passed;
  std::string text;
};

std::vector<Line> lines;

void report(int k, bool ok, const std::string& text) {
  lines.push_back({k, ok, text});
  std::cout << "criterion " << k << ": " << (ok ? "PASS" : "FAIL") << "  " << text << std::endl;
}

std::string first_failure(const mvf::SuiteReport& r) {
  for (const auto& c : r.checks)
    if (!c.passed) return c.name + " (expected " + c.expected + ", actual " + c.actual + ")";
  return {};
}

void suite_criterion(int k, const std::string& suite, const std::string& what, double limit) {
  const auto t0 = Clock::now();
  mvf::SuiteReport r = mvf::run_suite(suite);
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << what << ", " << r.checks.size() << " checks in " << t << " s";
  if (!r.passed()) os << "; first failure: " << first_failure(r);
  if (t > limit) os << "; over the " << limit << " s budget";
  report(k, r.passed() && t <= limit, os.str());
}

void adjoint_criterion() {
  const std::vector<std::pair<mvf::RootType, int>> cases = {{mvf::RootType::A, 1}, {mvf::RootType::A, 2},
                                                           {mvf::RootType::A, 3}, {mvf::RootType::A, 4},
                                                           {mvf::RootType::D, 4}};
  bool ok = true;
  std::ostringstream os;
  os << "origin stalk rank of the adjoint truncation:";
  for (auto [type, l] : cases) {
    mvf::RootSystem rs = mvf::RootSystem::build(type, l);
    mvf::Truncation tr{rs, rs.theta()};
    const auto t0 = Clock::now();
    mvf::MomentGraph g = mvf::build_graph(tr);
    mvf::BmpResult res = mvf::bmp_stalks(tr, g, {});
    const int got = res.stalks.at(g.index_of(mvf::Coweight::zero(l))).rank();
    const double t = seconds_since(t0);
    const bool case_ok = got == l && t < 30.0;
    ok = ok && case_ok;
    os << ' ' << rs.label() << '=' << got << (case_ok ? "" : "(expected " + std::to_string(l) + ")") << " [" << t
       << " s]";
  }
  mvf::RootSystem e6 = mvf::RootSystem::build(mvf::RootType::E, 6);
  mvf::Truncation tr{e6, e6.theta()};
  mvf::MomentGraph g = mvf::build_graph(tr);
  const std::int64_t estimate = mvf::estimate_system_size(tr, g, mvf::default_degree_bound(tr));
  if (std::getenv("MVF_ACCEPTANCE_E6")) {
    mvf::BmpOptions opts;
    opts.size_cap = estimate;
    const auto t0 = Clock::now();
    mvf::BmpResult res = mvf::bmp_stalks(tr, g, opts);
    const int got = res.stalks.at(g.index_of(mvf::Coweight::zero(6))).rank();
    ok = ok && got == 6;
    os << "; E6=" << got << " [" << seconds_since(t0) << " s]";
  } else {
    os << "; E6 stretch target skipped as expensive (estimated system size " << estimate
       << ", set MVF_ACCEPTANCE_E6=1 to run)";
  }
  report(2, ok, os.str());
}

void determinism_criterion() {
  const std::vector<std::vector<std::string>> commands = {
      {"roots", "--type", "E", "--rank", "6", "--json"},
      {"mult", "--type", "A", "--rank", "2", "--highest", "theta", "--weight", "zero", "--q"},
      {"tensor-dim", "--type", "A", "--rank", "2", "--lambda", "theta", "--mu", "theta", "--weight", "zero", "--decompose"},
      {"graph", "--type", "A", "--rank", "2", "--coweight", "theta", "--format", "json"},
      {"graph", "--type", "D", "--rank", "4", "--coweight", "theta", "--format", "dot"},
      {"stalks", "--type", "A", "--rank", "3", "--coweight", "theta", "--json"},
      {"mmatrix", "--type", "A", "--rank", "2", "--coweight", "2,2", "--json", "--threads", "3"},
      {"transition", "--type", "A", "--rank", "2", "--lambda", "theta", "--mu", "theta", "--weight", "zero", "--json"},
      {"transition", "--type", "A", "--rank", "2", "--lambda", "omega_1", "--mu", "omega_2", "--q-mode", "symbolic", "--json"},
      {"eta", "--series", "all", "--max-rank", "8", "--csv", "--threads", "4"},
      {"eta", "--type", "E", "--rank", "6"},
      {"verify", "--suite", "sl3", "--json"},
  };
  bool ok = true;
  std::string detail;
  for (const auto& cmd : commands) {
    std::ostringstream o1, e1, o2, e2;
    const int c1 = mvf::run_cli(cmd, o1, e1);
    const int c2 = mvf::run_cli(cmd, o2, e2);
    if (c1 != 0 || c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str() || o1.str().empty()) {
      ok = false;
      detail += " [" + cmd.front() + " differs or failed, exit " + std::to_string(c1) + "]";
    }
  }
  report(7, ok, std::to_string(commands.size()) + " CLI commands run twice, outputs byte-identical" + detail);
}

}  // namespace

int main() {
  suite_criterion(1, "sl3", "SL3 pipeline: A row (1,1,1), M column (2,1), C0 = [[2,2,2],[1,1,1]]", 1.0);
  adjoint_criterion();
  suite_criterion(3, "lusztig", "q-analog at 1 equals stalk rank on every vertex of the A1-A3 adjoint truncations", 1e9);
  suite_criterion(4, "tensor-dims", "dim (theta x theta)_0 = l^2 + |Phi|, E6 = 108, direct convolution to rank 4", 60.0);
  suite_criterion(5, "eta-tables", "efficiency bounds for A, D, E and their monotonicity", 1.0);
  suite_criterion(6, "properties", "M, bundle, stability, order-extension and GKM properties", 1e9);
  determinism_criterion();
  bool all = true;
  for (const auto& l : lines) all = all && l.passed;
  std::cout << (all ? "all acceptance criteria passed" : "some acceptance criteria failed") << std::endl;
  return all ? 0 : 1;
}
