#pragma once

#include <string>
#include <vector>

#include "mvf/poly.hpp"
#include "mvf/root_system.hpp"

namespace mvf {

/// The closure of the orbit of a dominant coweight; fixed points are the
/// weights of V_lambda.
struct Truncation {
  RootSystem rs;
  Coweight lambda;
};

/// Edge between vertices `lower` < `upper` (positions in the vertex order).
/// `label` holds the finite root coefficients (in simple-root coordinates)
/// followed by the loop coefficient k, i.e. the affine root alpha + k delta.
struct MomentEdge {
  int lower = 0;
  int upper = 0;
  std::vector<int> label;

  LinearForm form() const;
  friend bool operator==(const MomentEdge&, const MomentEdge&) = default;
};

/// GKM graph of a truncation. Vertices are stored in a linear extension of the
/// closure order: index 0 is the bottom, the last vertex is lambda. Edges are
/// oriented from the lower to the upper endpoint, and the partial order is the
/// transitive closure of these orientations.
class MomentGraph {
 public:
  MomentGraph() = default;
  MomentGraph(std::vector<Coweight> vertices, std::vector<MomentEdge> edges);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  /// Number of polynomial variables carried by the labels (rank + 1).
  int num_vars() const { return num_vars_; }
  const std::vector<Coweight>& vertices() const { return vertices_; }
  const Coweight& vertex(int i) const { return vertices_.at(i); }
  const std::vector<MomentEdge>& edges() const { return edges_; }
  const MomentEdge& edge(int e) const { return edges_.at(e); }
  /// Edge indices incident to a vertex.
  const std::vector<int>& incident(int v) const { return incident_.at(v); }
  int index_of(const Coweight& w) const;
  int top() const { return num_vertices() - 1; }

  /// Same graph with vertices renumbered so that position i holds the vertex
  /// previously at order[i]; order must be a linear extension of the edge
  /// orientation.
  MomentGraph reordered(const std::vector<int>& order) const;

  friend bool operator==(const MomentGraph& a, const MomentGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  int num_vars_ = 1;
  std::vector<Coweight> vertices_;
  std::vector<MomentEdge> edges_;
  std::vector<std::vector<int>> incident_;
};

MomentGraph build_graph(const Truncation& tr);

/// Edges joining x to vertices above it, in ascending order of the upper vertex.
std::vector<int> order_predecessors(const MomentGraph& g, int x);

/// True if every pair of labels at every vertex is non-proportional.
bool gkm_independent(const MomentGraph& g);

/// Vertex sequence used to order the graph of a truncation: dominant
/// conjugate height, then height, then lexicographic.
bool closure_order_less(const RootSystem& rs, const Coweight& a, const Coweight& b);

std::string export_graph(const MomentGraph& g, const std::string& format);
MomentGraph import_graph_json(const std::string& text);

}  // namespace mvf
