#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mvf/moment_graph.hpp"
#include "mvf/poly.hpp"

namespace mvf {

/// Raised when generators reach the degree bound, so higher degrees may hold more.
class InsufficientDegreeBound : public std::runtime_error {
 public:
  InsufficientDegreeBound(int vertex, int bound);
  int vertex() const { return vertex_; }
  int bound() const { return bound_; }

 private:
  int vertex_;
  int bound_;
};

/// Raised before a computation whose linear systems exceed the size cap.
class SystemTooLarge : public std::runtime_error {
 public:
  SystemTooLarge(std::int64_t estimate, std::int64_t cap);
  std::int64_t estimate() const { return estimate_; }
  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t estimate_;
  std::int64_t cap_;
};

/// Free graded module at one vertex: generator degrees, and for every
/// generator its image in each edge module above the vertex.
/// boundary[i][p][j] is the component of generator i along the p-th edge of
/// order_predecessors(g, x), on generator j of the upper endpoint, as a
/// polynomial on the edge hyperplane (degree degrees[i] - upper degree j).
struct Stalk {
  std::vector<int> degrees;
  std::vector<std::vector<std::vector<HomPoly>>> boundary;

  int rank() const { return static_cast<int>(degrees.size()); }
  /// Generator count per degree 0..max.
  std::vector<int> profile() const;
};

class StalkAssignment {
 public:
  StalkAssignment() = default;
  explicit StalkAssignment(int num_vertices) : stalks_(num_vertices) {}

  int num_vertices() const { return static_cast<int>(stalks_.size()); }
  bool has(int v) const { return stalks_.at(v).has_value(); }
  const Stalk& at(int v) const;
  void set(int v, Stalk s) { stalks_.at(v) = std::move(s); }

 private:
  std::vector<std::optional<Stalk>> stalks_;
};

/// Direct sum over a vertex's upward edges of (upper stalk) mod (edge label),
/// each summand a free module over the polynomial ring of the edge hyperplane.
class BoundaryAmbient final : public GradedAmbient {
 public:
  BoundaryAmbient(const MomentGraph& g, int x, const std::vector<std::vector<int>>& upper_degrees);

  int num_vars() const override { return nv_; }
  int dim(int degree) const override;
  SparseVec mul_var(int var, int degree, const SparseVec& v) const override;

  int num_edges() const { return static_cast<int>(edges_.size()); }
  int edge(int p) const { return edges_[p]; }
  const HyperplaneRestriction& restriction(int p) const { return *restr_[p]; }
  const std::vector<int>& upper_degrees(int p) const { return upper_degrees_[p]; }

  /// Offset of block (p, j) in the degree-d coordinates, or -1 when empty.
  int offset(int degree, int p, int j) const;

  /// Flattens per-edge, per-upper-generator polynomials of total degree d.
  SparseVec flatten(int degree, const std::vector<std::vector<HomPoly>>& parts) const;
  std::vector<std::vector<HomPoly>> unflatten(int degree, const SparseVec& v) const;

  /// Image of monomial `mono` (degree d - gen_degree, full ring) times a
  /// generator with the given boundary components.
  SparseVec image_of(int degree, int gen_degree, int mono, const std::vector<std::vector<HomPoly>>& gen_boundary) const;

 private:
  struct Layout {
    std::vector<std::vector<int>> offsets;
    int dim = 0;
  };
  const Layout& layout(int degree) const;

  int nv_;
  std::vector<int> edges_;
  std::vector<std::unique_ptr<HyperplaneRestriction>> restr_;
  std::vector<std::vector<int>> upper_degrees_;
  std::vector<std::vector<SparseVec>> restricted_vars_;  // [p][var]
  mutable std::vector<std::unique_ptr<Layout>> layouts_;
};

/// Free graded module with generators in the given degrees over the full ring.
class FreeAmbient final : public GradedAmbient {
 public:
  FreeAmbient(int nvars, std::vector<int> degrees);
  int num_vars() const override { return nv_; }
  int dim(int degree) const override;
  SparseVec mul_var(int var, int degree, const SparseVec& v) const override;
  int offset(int degree, int gen) const;
  std::vector<HomPoly> unflatten(int degree, const SparseVec& v) const;
  SparseVec flatten(int degree, const std::vector<HomPoly>& parts) const;

 private:
  int nv_;
  std::vector<int> degrees_;
};

/// Sections over an upper set: per degree, a basis of compatible tuples.
struct GradedSectionSpace {
  std::vector<int> upper_set;               // sorted vertex indices
  std::vector<std::vector<int>> degrees;    // generator degrees per vertex (indexed by vertex)
  int degree_bound = 0;
  int num_vars = 0;
  std::vector<std::vector<SparseVec>> basis;  // per degree

  int dim(int degree) const;
  /// Coordinate offset of (vertex, generator) in degree d, or -1.
  int offset(int degree, int vertex, int gen) const;
  /// Values of a coordinate vector at vertex v, one polynomial per generator.
  std::vector<HomPoly> values_at(int degree, const SparseVec& s, int vertex) const;
};

struct BoundaryModule {
  int vertex = 0;
  std::vector<std::vector<int>> upper_degrees;  // per predecessor edge
  std::vector<std::vector<SparseVec>> basis;    // per degree, BoundaryAmbient coordinates
};

struct StalkRankResult {
  int rank = 0;
  std::vector<int> profile;  // generator count per degree 0..D
};

/// Explicit sections over U by solving the edge congruences degree by degree.
GradedSectionSpace section_space(const MomentGraph& g, const std::vector<int>& upper_set,
                                 const StalkAssignment& stalks, int degree_bound);

/// Image of sections over the vertices above x in the edge modules at x.
BoundaryModule boundary_module(const MomentGraph& g, int x, const GradedSectionSpace& sections);

/// Minimal generator count of the boundary module at x; throws
/// InsufficientDegreeBound if a generator sits in the top degree.
StalkRankResult stalk_rank(const MomentGraph& g, int x, const GradedSectionSpace& sections);

struct BmpOptions {
  std::optional<int> degree_bound;  // default: default_degree_bound
  bool escalate = true;             // raise the bound on InsufficientDegreeBound
  int max_escalations = 4;
  std::int64_t size_cap = 20000;    // refuse when estimate_system_size exceeds this
};

struct BmpResult {
  StalkAssignment stalks;
  int degree_bound = 0;
};

/// Half the height of lambda, rounded up; at least 1.
int default_degree_bound(const Truncation& tr);

/// Largest edge-module dimension met at the degree bound, with upper stalk
/// ranks estimated by weight multiplicities.
std::int64_t estimate_system_size(const Truncation& tr, const MomentGraph& g, int degree_bound);

/// Braden-MacPherson stalks at every vertex, processed from the top down.
StalkAssignment bmp_stalks_at_bound(const MomentGraph& g, int degree_bound);
BmpResult bmp_stalks(const Truncation& tr, const MomentGraph& g, const BmpOptions& opts = {});

struct MultiplicityMatrix {
  std::vector<Coweight> rows;     // dominant alpha <= lambda, ascending
  std::vector<Coweight> columns;  // vertices of the lambda truncation, in graph order
  std::vector<std::vector<std::int64_t>> entries;
  int degree_bound = 0;           // largest bound used over the rows

  std::int64_t at(const Coweight& row, const Coweight& col) const;
  int row_index(const Coweight& row) const;
  int column_index(const Coweight& col) const;
};

/// Stalk ranks of the BMP sheaf of every dominant alpha <= lambda, evaluated
/// at every vertex of the lambda truncation (0 outside the alpha truncation).
MultiplicityMatrix multiplicity_matrix(const Truncation& tr, const BmpOptions& opts = {}, int threads = 1);

}  // namespace mvf
