#pragma once

#include <string>
#include <vector>

#include "mvf/bmp.hpp"
#include "mvf/rational.hpp"
#include "mvf/root_system.hpp"

namespace mvf {

/// Stalk rank of the alpha truncation at nu over dim (V_lambda x V_mu)_nu.
Rational eta_rep(const Coweight& alpha, const Coweight& nu, const Coweight& lambda, const Coweight& mu,
                 const RootSystem& rs, const BmpOptions& opts = {});

/// Stalk rank at nu over the summed stalk ranks of the collision set: the
/// vertices z of the alpha truncation such that nu - z is a weight of V_mu.
/// This reading of the collision set is an interpretation; the defining
/// formula does not pin it down.
Rational eta_graph(const Coweight& alpha, const Coweight& nu, const Coweight& mu, const RootSystem& rs,
                   const BmpOptions& opts = {});

/// l / (l^2 + |Phi|).
Rational eta_bound(RootType type, int rank);
/// |Phi| from the closed formulas, without building the root system.
std::int64_t root_count(RootType type, int rank);

enum class NumeratorMode { Analytic, Stalk };

struct EfficiencyRecord {
  RootType type = RootType::A;
  int rank = 0;
  std::int64_t num_roots = 0;
  std::int64_t geometric_rank = 0;     // adjoint stalk rank at the origin
  std::int64_t combinatorial_dim = 0;  // dim (V_theta x V_theta)_0
  Rational eta;
  Rational bound;
  std::string source;  // "stalk", "analytic", or "analytic (refused: ...)"
  std::string label() const;
};

EfficiencyRecord efficiency_record(RootType type, int rank, NumeratorMode mode, const BmpOptions& opts = {});

/// Rows for A_1..A_max, D_3..D_max and E_6..E_8.
std::vector<EfficiencyRecord> series_report(int max_rank, NumeratorMode mode, const BmpOptions& opts = {},
                                            int threads = 1);

/// Strict decrease of the bound along each family present in the records.
bool series_strictly_decreasing(const std::vector<EfficiencyRecord>& records, std::string* failure = nullptr);

}  // namespace mvf
