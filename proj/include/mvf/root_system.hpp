#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "mvf/rational.hpp"

namespace mvf {

/// A (co)weight, stored by its Dynkin labels: entry i is the pairing with the
/// i-th simple coroot. Roots and coroots are identified (simply-laced), so the
/// same type serves for weights and coweights.
struct Coweight {
  std::vector<int> labels;

  Coweight() = default;
  explicit Coweight(std::vector<int> l) : labels(std::move(l)) {}
  static Coweight zero(int rank) { return Coweight(std::vector<int>(rank, 0)); }

  int rank() const { return static_cast<int>(labels.size()); }
  bool is_zero() const;

  Coweight operator+(const Coweight& o) const;
  Coweight operator-(const Coweight& o) const;
  Coweight operator-() const;
  Coweight operator*(int k) const;

  friend bool operator==(const Coweight&, const Coweight&) = default;
  friend auto operator<=>(const Coweight& a, const Coweight& b) { return a.labels <=> b.labels; }

  std::string to_string() const;
};

/// A root given by its coefficients in the simple roots, together with its
/// Dynkin labels.
struct Root {
  std::vector<int> coeffs;
  Coweight weight;
  int height() const;
};

enum class RootType { A, D, E };

char type_letter(RootType t);
RootType parse_root_type(const std::string& s);

/// Simply-laced root datum of type A, D or E.
class RootSystem {
 public:
  /// Supported: A_l (l >= 1), D_l (l >= 3), E_6, E_7, E_8.
  static RootSystem build(RootType type, int rank);

  RootType type() const { return type_; }
  std::string label() const;
  int rank() const { return rank_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }

  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const std::vector<Root>& roots() const { return roots_; }
  const Root& highest_root() const { return positive_[highest_index_]; }
  Coweight theta() const { return highest_root().weight; }
  /// Half-sum of the positive roots; all Dynkin labels equal 1.
  Coweight weyl_vector() const { return Coweight(std::vector<int>(rank_, 1)); }
  Coweight fundamental(int i) const;
  Coweight simple_root(int i) const { return Coweight(cartan_[i]); }

  /// Simple roots in the fixed integer realization. Coordinates are scaled by
  /// realization_scale() (2 for type E, whose lattice has half-integer points).
  const std::vector<std::vector<int>>& simple_roots_realization() const { return simple_real_; }
  const std::vector<std::vector<int>>& roots_realization() const { return roots_real_; }
  int realization_scale() const { return scale_; }

  /// Coefficients in the simple roots when the weight lies in the root lattice.
  std::optional<std::vector<int>> root_coordinates(const Coweight& w) const;
  /// Weyl-invariant inner product normalized so that roots have length^2 = 2.
  Rational inner(const Coweight& a, const Coweight& b) const;
  /// <w, alpha^vee> for a root alpha given by simple-root coefficients.
  int pair_with_root(const Coweight& w, const std::vector<int>& root_coeffs) const;
  /// <w, 2 rho^vee>; an integer height function compatible with dominance.
  int two_rho_pairing(const Coweight& w) const;

  Coweight reflect(int simple_index, const Coweight& w) const;
  Coweight reflect_root(const Root& root, const Coweight& w) const;
  bool is_dominant(const Coweight& w) const;
  Coweight dominant_conjugate(const Coweight& w) const;

  /// nu <= lambda iff lambda - nu is a non-negative integer combination of
  /// simple roots.
  bool dominance_leq(const Coweight& nu, const Coweight& lambda) const;

  /// Roots together with the zero weight repeated rank() times.
  std::vector<Coweight> adjoint_weights() const;

  /// Linear extension of dominance: ascending <w, 2 rho>, ties broken by
  /// lexicographic comparison of Dynkin labels. Duplicates are removed.
  std::vector<Coweight> total_order_extension(std::vector<Coweight> weights) const;

  /// Resolves "theta", "zero", "rho", "omega_i" / "omega<i>" (1-based), "alpha_i"
  /// or a comma-separated list of Dynkin labels.
  Coweight parse_coweight(const std::string& name) const;

 private:
  RootType type_ = RootType::A;
  int rank_ = 0;
  int scale_ = 1;
  std::vector<std::vector<int>> simple_real_;
  std::vector<std::vector<int>> roots_real_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Rational>> cartan_inverse_;
  std::vector<Root> roots_;
  std::vector<Root> positive_;
  int highest_index_ = 0;
};

}  // namespace mvf
