#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mvf/root_system.hpp"

namespace mvf {

/// Polynomial in q with integer coefficients; index = power of q.
struct QPolynomial {
  std::vector<std::int64_t> coeffs;

  static QPolynomial constant(std::int64_t c);
  bool is_zero() const { return coeffs.empty(); }
  std::int64_t at_one() const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::int64_t coefficient(int power) const;

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& add_scaled(const QPolynomial& o, std::int64_t scale, int shift);
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

  /// e.g. "q + q^2", "0", "3".
  std::string to_string() const;

 private:
  void trim();
};

/// Multiplicity of each weight of an irreducible representation.
using WeightTable = std::map<Coweight, std::int64_t>;

/// Memoized (q-)Kostant partition function of one root system. Not shared
/// between threads; create one per task.
class KostantPartition {
 public:
  explicit KostantPartition(const RootSystem& rs);
  /// Counts expressions of the root-lattice vector (simple-root coordinates)
  /// as sums of positive roots; the power of q records the number of summands.
  const QPolynomial& count(const std::vector<int>& root_coords);
  QPolynomial count(const Coweight& nu);

 private:
  const QPolynomial& count_from(int first_root, const std::vector<int>& v);

  const RootSystem& rs_;
  std::vector<std::vector<int>> roots_;
  std::vector<std::unordered_map<std::string, QPolynomial>> memo_;
};

/// Plain variant when q_graded is false (the result is then a constant).
QPolynomial kostant_partition(const Coweight& nu, const RootSystem& rs, bool q_graded);

/// Orbit of a weight under the Weyl group, with the parity of the length of
/// a minimal element taking the dominant representative to each point.
/// Only meaningful for regular dominant input (then the orbit is a torsor).
std::vector<std::pair<Coweight, int>> regular_orbit_with_signs(const Coweight& regular_dominant,
                                                               const RootSystem& rs, std::size_t cap);

/// dim (V_lambda)_nu by the Kostant alternating sum; the q-graded variant is
/// the Lusztig q-analog.
QPolynomial weight_multiplicity(const Coweight& lambda, const Coweight& nu, const RootSystem& rs, bool q_graded);

/// All weights of V_lambda with multiplicities, by Freudenthal's recursion.
WeightTable weight_table(const Coweight& lambda, const RootSystem& rs);

/// Weights of V_lambda (support of weight_table), without multiplicities.
std::vector<Coweight> weights_of(const Coweight& lambda, const RootSystem& rs);

/// Weight multiplicities of V_lambda tensor V_mu.
WeightTable tensor_table(const Coweight& lambda, const Coweight& mu, const RootSystem& rs);
std::int64_t tensor_weight_dim(const Coweight& lambda, const Coweight& mu, const Coweight& nu, const RootSystem& rs);

/// Multiplicities N^nu of the irreducible summands of V_lambda tensor V_mu.
std::map<Coweight, std::int64_t> tensor_decompose(const Coweight& lambda, const Coweight& mu, const RootSystem& rs);

}  // namespace mvf
