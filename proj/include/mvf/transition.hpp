#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvf/bmp.hpp"
#include "mvf/linalg.hpp"
#include "mvf/moment_graph.hpp"

namespace mvf {

/// A generic fixed point: a pair of weights, one copy per basis vector of
/// the weight spaces (copy runs over m_lambda(sigma) * m_mu(tau)).
struct GenericIndex {
  Coweight sigma;
  Coweight tau;
  int copy = 0;
  friend bool operator==(const GenericIndex&, const GenericIndex&) = default;
};

struct SpecializationMatrix {
  std::vector<Coweight> rows;        // special fixed points (weights of V_{lambda+mu})
  std::vector<GenericIndex> columns;
  ExactMatrix entries;
};

/// Columns: all weight pairs of V_lambda x V_mu with multiplicity. Rows: the
/// weights of V_{lambda+mu} in graph order, or only nu (with the columns
/// restricted to the pairs summing to nu) when a filter is given.
SpecializationMatrix build_A(const Coweight& lambda, const Coweight& mu, const RootSystem& rs,
                             const std::optional<Coweight>& weight_filter = std::nullopt);

/// Formal product of edge labels (each label with a multiplicity); empty is 1.
struct EulerEntry {
  std::vector<std::pair<std::vector<int>, int>> factors;
  bool is_unit() const { return factors.empty(); }
  EulerEntry operator*(const EulerEntry& o) const;
  std::string to_string() const;
  friend bool operator==(const EulerEntry&, const EulerEntry&) = default;
};

enum class EulerMode { Unit, Symbolic };

/// One entry per vertex of g: the unit, or the product of incident labels.
std::vector<EulerEntry> build_Q(const MomentGraph& g, EulerMode mode);

struct TransitionBundle {
  std::vector<Coweight> row_weights;      // b_alpha / v_alpha, from the top down
  std::vector<Coweight> special;          // c_spec
  std::vector<GenericIndex> generic;      // c_gen / u_k
  std::vector<Rational> P;                // per row
  ExactMatrix M;                          // rows x special
  ExactMatrix A;                          // special x generic
  std::vector<EulerEntry> Q;              // per generic column
  ExactMatrix core;                       // P * M * A
  int rank = 0;                           // of the root system, for the rank bound
  std::optional<Coweight> zero_block;     // weight whose block is rank-checked

  /// Entry of C = P M A Q^{-1}, rendered exactly ("p/q" or "p/q / (Euler)").
  std::string c_entry(int row, int col) const;
};

/// C = P * M * A * Q^{-1}, with Q kept formal. M has one row per entry of
/// row_weights and one column per row of A; P and Q may be empty (identity).
TransitionBundle compose_C(std::vector<Rational> P, std::vector<Coweight> row_weights, ExactMatrix M,
                           const SpecializationMatrix& A, std::vector<EulerEntry> Q);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Checks non-negative integrality of M and A, rank of the zero
/// weight block, monomial columns over standard-basis M columns, support, and
/// the column sparsity bound.
VerifyReport verify_bundle(const TransitionBundle& b);

struct TransitionRequest {
  Coweight lambda;
  Coweight mu;
  std::optional<Coweight> weight;   // block at one target weight
  EulerMode q_mode = EulerMode::Unit;
  std::vector<Rational> P;          // empty: identity
  BmpOptions bmp;
  int threads = 1;
};

/// Builds P, M, A, Q for V_lambda tensor V_mu and composes C.
TransitionBundle build_transition(const RootSystem& rs, const TransitionRequest& req);

}  // namespace mvf
