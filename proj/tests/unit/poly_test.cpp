#include <doctest.h>

#include <random>

#include "mvf/poly.hpp"

using namespace mvf;

namespace {

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<SparseVec> all_monomials(int n, int d) {
  std::vector<SparseVec> out;
  for (int i = 0; i < monomials(n, d).size(); ++i) out.push_back({{i, Rational(1)}});
  return out;
}

}  // namespace

TEST_CASE("monomial counts") {
  for (int n = 1; n <= 6; ++n)
    for (int d = 0; d <= 6; ++d) {
      CHECK(monomial_count(n, d) == binomial(d + n - 1, n - 1));
      CHECK(monomials(n, d).size() == monomial_count(n, d));
    }
  const auto& b = monomials(3, 2);
  CHECK(b.exponents(0)[0] == 2);
  for (int i = 0; i < b.size(); ++i) CHECK(b.index_of(b.exponents(i)) == i);
}

TEST_CASE("product table agrees with exponent addition") {
  const auto& t = product_table(3, 2, 1);
  const auto& b2 = monomials(3, 2);
  const auto& b1 = monomials(3, 1);
  const auto& b3 = monomials(3, 3);
  for (int i = 0; i < b2.size(); ++i)
    for (int j = 0; j < b1.size(); ++j) {
      std::vector<std::uint8_t> e(3);
      for (int k = 0; k < 3; ++k) e[k] = b2.exponents(i)[k] + b1.exponents(j)[k];
      CHECK(t[i * b1.size() + j] == b3.index_of(e));
    }
}

TEST_CASE("polynomial product is commutative and respects zero") {
  LinearForm x{{1, 0}}, y{{0, 1}};
  HomPoly xy = x.as_poly() * y.as_poly();
  CHECK(xy == y.as_poly() * x.as_poly());
  CHECK(xy.degree == 2);
  CHECK(HomPoly::zero(2, -1).coeffs.empty());
  CHECK((xy * HomPoly::zero(2, -1)).is_zero());
}

TEST_CASE("restriction kills the defining form") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < 30; ++t) {
    LinearForm f{{c(rng), c(rng), c(rng)}};
    if (f.is_zero()) continue;
    HyperplaneRestriction h(f);
    CHECK(h.restrict(f.as_poly()).is_zero());
    HomPoly g = HomPoly::monomial(3, 2, t % 6, Rational(1));
    CHECK(h.restrict(f.as_poly() * g).is_zero());
  }
}

TEST_CASE("divisibility by x - y in degree one") {
  GradedPolySpace space(2, 3);
  LinearForm f{{1, -1}};
  ExactMatrix cond = divisibility_conditions(space, 1, f);
  auto kernel = nullspace_basis(cond);
  REQUIRE(kernel.size() == 1);
  // a x + b y divisible by x - y exactly when a + b = 0.
  CHECK(kernel[0][0] + kernel[0][1] == Rational(0));
}

TEST_CASE("divisible polynomials of degree d are multiples of a degree d-1 space") {
  for (int n = 2; n <= 4; ++n) {
    GradedPolySpace space(n, 4);
    std::vector<Rational> coeffs;
    for (int i = 0; i < n; ++i) coeffs.push_back(Rational(i + 1, i % 2 ? -1 : 1));
    LinearForm f{coeffs};
    for (int d = 1; d <= 4; ++d)
      CHECK(nullspace_basis(divisibility_conditions(space, d, f)).size() ==
            static_cast<std::size_t>(monomial_count(n, d - 1)));
  }
}

TEST_CASE("minimal generators of simple graded modules") {
  const int n = 3, top = 4;
  std::vector<std::vector<SparseVec>> ring, maximal, square;
  for (int d = 0; d <= top; ++d) {
    ring.push_back(all_monomials(n, d));
    maximal.push_back(d == 0 ? std::vector<SparseVec>{} : all_monomials(n, d));
    // Multiples of x0^2.
    std::vector<SparseVec> sq;
    if (d >= 2) {
      const auto& b = monomials(n, d);
      for (int i = 0; i < b.size(); ++i)
        if (b.exponents(i)[0] >= 2) sq.push_back({{i, Rational(1)}});
    }
    square.push_back(sq);
  }
  CHECK(graded_minimal_generators(ring, n) == std::vector<int>{1, 0, 0, 0, 0});
  CHECK(graded_minimal_generators(maximal, n) == std::vector<int>{0, n, 0, 0, 0});
  CHECK(graded_minimal_generators(square, n) == std::vector<int>{0, 0, 1, 0, 0});
}
