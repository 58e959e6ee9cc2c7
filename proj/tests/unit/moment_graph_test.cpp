#include <doctest.h>

#include <algorithm>
#include <json.hpp>

#include "mvf/moment_graph.hpp"
#include "mvf/weights.hpp"

using namespace mvf;

namespace {

MomentGraph adjoint(RootType t, int l) {
  RootSystem rs = RootSystem::build(t, l);
  return build_graph({rs, rs.theta()});
}

}  // namespace

TEST_CASE("A1 adjoint graph") {
  MomentGraph g = adjoint(RootType::A, 1);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.num_vars() == 2);
  CHECK(g.vertex(0) == Coweight({0}));
  CHECK(g.vertex(g.top()) == Coweight({2}));
  std::vector<std::vector<int>> labels;
  for (const auto& e : g.edges()) labels.push_back(e.label);
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::vector<int>>{{1, -1}, {1, 0}, {1, 1}});
}

TEST_CASE("A2 adjoint graph edge counts") {
  MomentGraph g = adjoint(RootType::A, 2);
  CHECK(g.num_vertices() == 7);
  CHECK(g.num_edges() == 15);
  CHECK(g.incident(g.index_of(Coweight::zero(2))).size() == 6);
}

TEST_CASE("graph vertices are the weights of the representation") {
  RootSystem rs = RootSystem::build(RootType::A, 3);
  Truncation tr{rs, Coweight({0, 2, 0})};
  MomentGraph g = build_graph(tr);
  CHECK(static_cast<std::size_t>(g.num_vertices()) == weight_table(tr.lambda, rs).size());
  for (const auto& e : g.edges()) {
    CHECK(e.lower < e.upper);
    CHECK(rs.root_coordinates(g.vertex(e.upper) - g.vertex(e.lower)));
  }
}

TEST_CASE("labels are pairwise independent at every vertex") {
  for (auto [t, l] : std::vector<std::pair<RootType, int>>{
           {RootType::A, 1}, {RootType::A, 2}, {RootType::A, 3}, {RootType::A, 4}, {RootType::D, 4}, {RootType::E, 6}})
    CHECK(gkm_independent(adjoint(t, l)));
}

TEST_CASE("every non-top vertex has an upward edge") {
  for (auto [t, l] : std::vector<std::pair<RootType, int>>{{RootType::A, 3}, {RootType::D, 5}}) {
    MomentGraph g = adjoint(t, l);
    for (int v = 0; v < g.top(); ++v) CHECK(!order_predecessors(g, v).empty());
    CHECK(order_predecessors(g, g.top()).empty());
  }
}

TEST_CASE("JSON export round-trips") {
  MomentGraph g = adjoint(RootType::A, 2);
  const std::string text = export_graph(g, "json");
  MomentGraph h = import_graph_json(text);
  CHECK(h == g);
  auto j = nlohmann::json::parse(text);
  CHECK(j["vertices"].size() == 7);
  CHECK(j["edges"].size() == 15);
  CHECK(j["order"].size() == 15);
  CHECK_THROWS(import_graph_json("{\"vertices\": [[0]], \"edges\": [{\"u\": 0, \"v\": 0, \"label\": [1]}]}"));
}

TEST_CASE("DOT export lists every edge once") {
  MomentGraph g = adjoint(RootType::D, 4);
  const std::string dot = export_graph(g, "dot");
  std::size_t count = 0;
  for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++count;
  CHECK(count == static_cast<std::size_t>(g.num_edges()));
  CHECK(dot.rfind("graph moment {", 0) == 0);
  CHECK_THROWS(export_graph(g, "svg"));
}

TEST_CASE("reordering preserves the graph up to relabeling") {
  MomentGraph g = adjoint(RootType::A, 2);
  std::vector<int> order(g.num_vertices());
  for (int i = 0; i < g.num_vertices(); ++i) order[i] = i;
  CHECK(g.reordered(order) == g);
}
