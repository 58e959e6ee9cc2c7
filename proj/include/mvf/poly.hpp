#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "mvf/linalg.hpp"
#include "mvf/rational.hpp"

namespace mvf {

/// Multiset coefficient C(degree + nvars - 1, nvars - 1); the number of
/// monomials of the given degree in `nvars` variables.
std::int64_t monomial_count(int nvars, int degree);

/// Monomials of fixed degree in a fixed number of variables, in descending
/// lexicographic order of their exponent vectors.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  int size() const { return count_; }
  std::span<const std::uint8_t> exponents(int index) const {
    return {exps_.data() + static_cast<std::size_t>(index) * nvars_, static_cast<std::size_t>(nvars_)};
  }
  /// Index of the monomial with the given exponent vector, or -1.
  int index_of(std::span<const std::uint8_t> exps) const;

 private:
  static std::uint64_t pack(std::span<const std::uint8_t> exps);

  int nvars_;
  int degree_;
  int count_ = 0;
  std::vector<std::uint8_t> exps_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Shared, thread-safe cache of monomial bases.
const MonomialBasis& monomials(int nvars, int degree);

/// Index table for products: entry [i * size(d2) + j] is the index in degree
/// d1 + d2 of monomial i (degree d1) times monomial j (degree d2).
const std::vector<int>& product_table(int nvars, int d1, int d2);

/// Homogeneous polynomial, dense in the monomial basis of its degree.
struct HomPoly {
  int nvars = 0;
  int degree = 0;
  std::vector<Rational> coeffs;

  static HomPoly zero(int nvars, int degree);
  static HomPoly monomial(int nvars, int degree, int index, const Rational& c = Rational(1));
  bool is_zero() const;
  friend bool operator==(const HomPoly&, const HomPoly&) = default;
};

HomPoly operator*(const HomPoly& a, const HomPoly& b);
HomPoly operator+(const HomPoly& a, const HomPoly& b);

/// Per-degree monomial bases of a polynomial ring truncated at a degree bound.
class GradedPolySpace {
 public:
  GradedPolySpace(int num_vars, int degree_bound);
  int num_vars() const { return num_vars_; }
  int degree_bound() const { return degree_bound_; }
  const MonomialBasis& basis(int degree) const;

 private:
  int num_vars_;
  int degree_bound_;
};

/// Linear form sum c_i x_i.
struct LinearForm {
  std::vector<Rational> coeffs;

  int num_vars() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const;
  /// Variable with the largest-magnitude coefficient (first on ties).
  int dependent_var() const;
  bool proportional_to(const LinearForm& other) const;
  HomPoly as_poly() const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Restriction of polynomials to the hyperplane {form = 0}.
///
/// The hyperplane is parametrized by all variables except the dependent one,
/// so the quotient ring R/(form) is identified with a polynomial ring in one
/// fewer variable. Restriction matrices are cached per degree.
class HyperplaneRestriction {
 public:
  explicit HyperplaneRestriction(LinearForm form);

  const LinearForm& form() const { return form_; }
  int full_vars() const { return form_.num_vars(); }
  int restricted_vars() const { return form_.num_vars() - 1; }
  int dependent_var() const { return dep_; }

  /// Column j is the restriction of monomial j of the given degree, as a
  /// sparse vector over restricted monomials of the same degree.
  const std::vector<SparseVec>& matrix(int degree) const;

  HomPoly restrict(const HomPoly& p) const;
  /// Restriction of the coordinate function x_var.
  HomPoly restricted_variable(int var) const;

 private:
  LinearForm form_;
  int dep_;
  std::vector<Rational> substitution_;  // x_dep = sum_k substitution_[k] y_k
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<std::vector<SparseVec>>> cache_;
};

/// Linear conditions on the coefficients of a degree-d polynomial that hold
/// exactly when the polynomial is divisible by `form`. Rows are indexed by
/// restricted monomials, columns by monomials of `space` in degree d.
ExactMatrix divisibility_conditions(const GradedPolySpace& space, int degree, const LinearForm& form);

/// A graded vector space with an action of `num_vars` degree-one operators;
/// the setting for graded Nakayama counts.
class GradedAmbient {
 public:
  virtual ~GradedAmbient() = default;
  virtual int num_vars() const = 0;
  virtual int dim(int degree) const = 0;
  /// Image of `v` (degree d) under variable `var`, in degree d + 1.
  virtual SparseVec mul_var(int var, int degree, const SparseVec& v) const = 0;
};

/// The polynomial ring itself as a graded ambient.
class PolynomialAmbient final : public GradedAmbient {
 public:
  explicit PolynomialAmbient(int nvars) : nvars_(nvars) {}
  int num_vars() const override { return nvars_; }
  int dim(int degree) const override;
  SparseVec mul_var(int var, int degree, const SparseVec& v) const override;

 private:
  int nvars_;
};

/// Number of minimal generators per degree of the graded submodule whose
/// degree-d part is spanned by per_degree_bases[d]. Throws if the data are not
/// closed under the variable action below the top degree.
std::vector<int> graded_minimal_generators(const std::vector<std::vector<SparseVec>>& per_degree_bases,
                                           const GradedAmbient& ambient);
std::vector<int> graded_minimal_generators(const std::vector<std::vector<SparseVec>>& per_degree_bases, int vars);

}  // namespace mvf
