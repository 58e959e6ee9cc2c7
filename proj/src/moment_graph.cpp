#include "mvf/moment_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mvf/weights.hpp"

namespace mvf {

LinearForm MomentEdge::form() const {
  LinearForm f;
  for (int c : label) f.coeffs.emplace_back(c);
  return f;
}

MomentGraph::MomentGraph(std::vector<Coweight> vertices, std::vector<MomentEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), incident_(vertices_.size()) {
  if (!edges_.empty()) num_vars_ = static_cast<int>(edges_.front().label.size());
  else if (!vertices_.empty()) num_vars_ = vertices_.front().rank() + 1;
  for (int e = 0; e < num_edges(); ++e) {
    const auto& edge = edges_[e];
    if (edge.lower < 0 || edge.upper >= num_vertices() || edge.lower >= edge.upper)
      throw std::invalid_argument("MomentGraph: edge endpoints out of order");
    if (static_cast<int>(edge.label.size()) != num_vars_)
      throw std::invalid_argument("MomentGraph: inconsistent label length");
    if (std::all_of(edge.label.begin(), edge.label.end(), [](int c) { return c == 0; }))
      throw std::invalid_argument("MomentGraph: zero edge label");
    incident_[edge.lower].push_back(e);
    incident_[edge.upper].push_back(e);
  }
}

int MomentGraph::index_of(const Coweight& w) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices_[i] == w) return i;
  return -1;
}

MomentGraph MomentGraph::reordered(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != num_vertices()) throw std::invalid_argument("reordered: wrong length");
  std::vector<int> position(num_vertices(), -1);
  for (int i = 0; i < num_vertices(); ++i) position.at(order[i]) = i;
  if (std::count(position.begin(), position.end(), -1)) throw std::invalid_argument("reordered: not a permutation");
  std::vector<Coweight> verts;
  for (int v : order) verts.push_back(vertices_[v]);
  std::vector<MomentEdge> edges;
  for (const auto& e : edges_) {
    MomentEdge r{position[e.lower], position[e.upper], e.label};
    if (r.lower > r.upper) throw std::invalid_argument("reordered: order inverts an edge");
    edges.push_back(std::move(r));
  }
  std::sort(edges.begin(), edges.end(),
            [](const MomentEdge& a, const MomentEdge& b) { return std::tie(a.lower, a.upper) < std::tie(b.lower, b.upper); });
  return MomentGraph(std::move(verts), std::move(edges));
}

bool closure_order_less(const RootSystem& rs, const Coweight& a, const Coweight& b) {
  int da = rs.two_rho_pairing(rs.dominant_conjugate(a)), db = rs.two_rho_pairing(rs.dominant_conjugate(b));
  if (da != db) return da < db;
  int ha = rs.two_rho_pairing(a), hb = rs.two_rho_pairing(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

MomentGraph build_graph(const Truncation& tr) {
  const RootSystem& rs = tr.rs;
  if (tr.lambda.rank() != rs.rank() || !rs.is_dominant(tr.lambda))
    throw std::invalid_argument("build_graph: lambda must be a dominant coweight of " + rs.label());
  std::vector<Coweight> verts = weights_of(tr.lambda, rs);
  std::sort(verts.begin(), verts.end(),
            [&](const Coweight& a, const Coweight& b) { return closure_order_less(rs, a, b); });
  std::map<Coweight, int> pos;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) pos[verts[i]] = i;

  std::vector<MomentEdge> edges;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
    const Coweight& mu = verts[i];
    for (const auto& root : rs.positive_roots()) {
      // Weight strings are unbroken, so stepping stops at the first gap.
      for (int n = 1;; ++n) {
        auto it = pos.find(mu + root.weight * n);
        if (it == pos.end()) break;
        const int k = n + rs.pair_with_root(mu, root.coeffs);
        std::vector<int> label = root.coeffs;
        label.push_back(k);
        int j = it->second;
        edges.push_back({std::min(i, j), std::max(i, j), std::move(label)});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const MomentEdge& a, const MomentEdge& b) {
    return std::tie(a.lower, a.upper, a.label) < std::tie(b.lower, b.upper, b.label);
  });
  return MomentGraph(std::move(verts), std::move(edges));
}

std::vector<int> order_predecessors(const MomentGraph& g, int x) {
  if (x < 0 || x >= g.num_vertices()) throw std::out_of_range("order_predecessors: unknown vertex");
  std::vector<int> out;
  for (int e : g.incident(x))
    if (g.edge(e).lower == x) out.push_back(e);
  std::sort(out.begin(), out.end(), [&](int a, int b) { return g.edge(a).upper < g.edge(b).upper; });
  return out;
}

bool gkm_independent(const MomentGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        if (g.edge(inc[i]).form().proportional_to(g.edge(inc[j]).form())) return false;
  }
  return true;
}

std::string export_graph(const MomentGraph& g, const std::string& format) {
  auto label_text = [](const std::vector<int>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
  };
  if (format == "dot") {
    std::ostringstream os;
    os << "graph moment {\n";
    for (int i = 0; i < g.num_vertices(); ++i) os << "  v" << i << " [label=\"" << g.vertex(i).to_string() << "\"];\n";
    for (const auto& e : g.edges())
      os << "  v" << e.lower << " -- v" << e.upper << " [label=\"" << label_text(e.label) << "\"];\n";
    os << "}\n";
    return os.str();
  }
  if (format == "json") {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : g.vertices()) j["vertices"].push_back(v.labels);
    j["edges"] = nlohmann::ordered_json::array();
    j["order"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges()) {
      nlohmann::ordered_json je;
      je["u"] = e.lower;
      je["v"] = e.upper;
      je["label"] = e.label;
      j["edges"].push_back(je);
      j["order"].push_back({e.lower, e.upper});
    }
    return j.dump(2) + "\n";
  }
  throw std::invalid_argument("export_graph: unknown format '" + format + "' (expected dot or json)");
}

MomentGraph import_graph_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<Coweight> verts;
  for (const auto& v : j.at("vertices")) verts.emplace_back(v.get<std::vector<int>>());
  std::vector<MomentEdge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(), e.at("label").get<std::vector<int>>()});
  return MomentGraph(std::move(verts), std::move(edges));
}

}  // namespace mvf
