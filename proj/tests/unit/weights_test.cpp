#include <doctest.h>

#include <random>

#include "mvf/weights.hpp"

using namespace mvf;

namespace {

// Weyl dimension formula.
Rational weyl_dimension(const Coweight& lambda, const RootSystem& rs) {
  Rational d(1);
  const Coweight shifted = lambda + rs.weyl_vector();
  for (const auto& a : rs.positive_roots())
    d *= Rational(rs.pair_with_root(shifted, a.coeffs), rs.pair_with_root(rs.weyl_vector(), a.coeffs));
  return d;
}

std::int64_t table_dim(const WeightTable& t) {
  std::int64_t s = 0;
  for (const auto& [w, m] : t) s += m;
  return s;
}

}  // namespace

TEST_CASE("q-analog of the A2 adjoint zero weight") {
  RootSystem rs = RootSystem::build(RootType::A, 2);
  QPolynomial q = weight_multiplicity(rs.theta(), Coweight::zero(2), rs, true);
  CHECK(q.to_string() == "q + q^2");
  CHECK(q.at_one() == 2);
  CHECK(weight_multiplicity(rs.theta(), rs.theta(), rs, true).to_string() == "1");
}

TEST_CASE("q-analog at the adjoint zero weight has exponents 1..l in type A") {
  for (int l = 1; l <= 5; ++l) {
    RootSystem rs = RootSystem::build(RootType::A, l);
    QPolynomial q = weight_multiplicity(rs.theta(), Coweight::zero(l), rs, true);
    CHECK(q.degree() == l);
    for (int k = 1; k <= l; ++k) CHECK(q.coefficient(k) == 1);
    CHECK(q.coefficient(0) == 0);
  }
}

TEST_CASE("kostant partition function counts") {
  RootSystem a2 = RootSystem::build(RootType::A, 2);
  CHECK(kostant_partition(a2.theta(), a2, false).at_one() == 2);
  CHECK(kostant_partition(Coweight::zero(2), a2, false).at_one() == 1);
  CHECK(kostant_partition(Coweight({1, 0}), a2, false).is_zero());
  CHECK(kostant_partition(a2.theta() * 2, a2, false).at_one() == 3);
}

TEST_CASE("Freudenthal and Kostant agree, dimensions match Weyl") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> lab(0, 2);
  for (auto [t, l] : std::vector<std::pair<RootType, int>>{
           {RootType::A, 1}, {RootType::A, 2}, {RootType::A, 3}, {RootType::A, 4}, {RootType::D, 4}}) {
    RootSystem rs = RootSystem::build(t, l);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<int> labels(l);
      for (auto& x : labels) x = lab(rng);
      Coweight lambda(labels);
      WeightTable table = weight_table(lambda, rs);
      CHECK(Rational(table_dim(table)) == weyl_dimension(lambda, rs));
      for (const auto& [nu, m] : table)
        if (rs.is_dominant(nu)) CHECK(weight_multiplicity(lambda, nu, rs, false).at_one() == m);
      CHECK(table.size() == weights_of(lambda, rs).size());
    }
  }
}

TEST_CASE("weight multiplicities are Weyl invariant") {
  RootSystem rs = RootSystem::build(RootType::A, 3);
  WeightTable t = weight_table(Coweight({2, 0, 1}), rs);
  for (const auto& [nu, m] : t)
    for (int i = 0; i < 3; ++i) CHECK(t.at(rs.reflect(i, nu)) == m);
}

TEST_CASE("tensor zero weight of the adjoint square") {
  RootSystem e6 = RootSystem::build(RootType::E, 6);
  CHECK(tensor_weight_dim(e6.theta(), e6.theta(), Coweight::zero(6), e6) == 108);
  for (int l = 1; l <= 5; ++l) {
    RootSystem rs = RootSystem::build(RootType::A, l);
    CHECK(tensor_weight_dim(rs.theta(), rs.theta(), Coweight::zero(l), rs) == l * l + rs.num_roots());
  }
}

TEST_CASE("tensor decomposition") {
  RootSystem a1 = RootSystem::build(RootType::A, 1);
  auto d = tensor_decompose(Coweight({1}), Coweight({1}), a1);
  CHECK(d == std::map<Coweight, std::int64_t>{{Coweight({0}), 1}, {Coweight({2}), 1}});

  RootSystem a2 = RootSystem::build(RootType::A, 2);
  auto dd = tensor_decompose(a2.theta(), a2.theta(), a2);
  CHECK(dd.at(a2.theta()) == 2);
  CHECK(dd.at(Coweight::zero(2)) == 1);
  CHECK(dd.at(Coweight({2, 2})) == 1);
  Rational total;
  for (const auto& [w, m] : dd) total += Rational(m) * weyl_dimension(w, a2);
  CHECK(total == Rational(64));
}
