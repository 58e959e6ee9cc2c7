#include <doctest.h>

#include <set>

#include "mvf/root_system.hpp"

using namespace mvf;

TEST_CASE("root counts") {
  for (int l = 1; l <= 8; ++l) CHECK(RootSystem::build(RootType::A, l).num_roots() == l * (l + 1));
  for (int l = 3; l <= 8; ++l) CHECK(RootSystem::build(RootType::D, l).num_roots() == 2 * l * (l - 1));
  CHECK(RootSystem::build(RootType::E, 6).num_roots() == 72);
  CHECK(RootSystem::build(RootType::E, 7).num_roots() == 126);
  CHECK(RootSystem::build(RootType::E, 8).num_roots() == 240);
  CHECK_THROWS(RootSystem::build(RootType::E, 5));
  CHECK_THROWS(RootSystem::build(RootType::D, 2));
  CHECK_THROWS(parse_root_type("B"));
}

TEST_CASE("cartan matrices are symmetric with Dynkin degrees") {
  for (auto [t, l] : std::vector<std::pair<RootType, int>>{{RootType::A, 5}, {RootType::D, 5}, {RootType::E, 8}}) {
    RootSystem rs = RootSystem::build(t, l);
    const auto& c = rs.cartan_matrix();
    int edges = 0;
    for (int i = 0; i < l; ++i) {
      CHECK(c[i][i] == 2);
      for (int j = 0; j < l; ++j) {
        CHECK(c[i][j] == c[j][i]);
        if (i < j && c[i][j] != 0) {
          CHECK(c[i][j] == -1);
          ++edges;
        }
      }
    }
    CHECK(edges == l - 1);
  }
}

TEST_CASE("highest root is dominant and above every root") {
  for (auto [t, l] : std::vector<std::pair<RootType, int>>{
           {RootType::A, 1}, {RootType::A, 4}, {RootType::D, 4}, {RootType::D, 6}, {RootType::E, 6}, {RootType::E, 7}}) {
    RootSystem rs = RootSystem::build(t, l);
    const Coweight theta = rs.theta();
    CHECK(rs.is_dominant(theta));
    for (const auto& r : rs.roots()) CHECK(rs.dominance_leq(r.weight, theta));
    int dominant_roots = 0;
    for (const auto& r : rs.roots()) dominant_roots += rs.is_dominant(r.weight);
    CHECK(dominant_roots == 1);
    CHECK(rs.inner(theta, theta) == Rational(2));
    CHECK(rs.two_rho_pairing(theta) == 2 * rs.highest_root().height());
  }
  CHECK(RootSystem::build(RootType::A, 2).theta() == Coweight({1, 1}));
  CHECK(RootSystem::build(RootType::A, 1).theta() == Coweight({2}));
}

TEST_CASE("reflections are involutions that permute the roots") {
  RootSystem rs = RootSystem::build(RootType::D, 5);
  std::set<Coweight> roots;
  for (const auto& r : rs.roots()) roots.insert(r.weight);
  for (int i = 0; i < rs.rank(); ++i) {
    CHECK(rs.reflect(i, rs.simple_root(i)) == -rs.simple_root(i));
    for (const auto& r : rs.roots()) {
      CHECK(rs.reflect(i, rs.reflect(i, r.weight)) == r.weight);
      CHECK(roots.count(rs.reflect(i, r.weight)) == 1);
    }
  }
}

TEST_CASE("dominant conjugate and dominance order") {
  RootSystem rs = RootSystem::build(RootType::A, 2);
  CHECK(rs.dominant_conjugate(Coweight({-1, 2})) == Coweight({1, 1}));
  CHECK(rs.dominant_conjugate(Coweight({0, -3})) == Coweight({3, 0}));
  CHECK(rs.dominance_leq(Coweight({0, 0}), Coweight({1, 1})));
  CHECK(!rs.dominance_leq(Coweight({1, 0}), Coweight({1, 1})));
  CHECK(!rs.dominance_leq(Coweight({1, 1}), Coweight({0, 0})));
  CHECK(rs.root_coordinates(Coweight({1, 1})) == std::vector<int>{1, 1});
  CHECK(!rs.root_coordinates(Coweight({1, 0})));
}

TEST_CASE("total order extension sorts by height and keeps dominance") {
  RootSystem rs = RootSystem::build(RootType::A, 3);
  auto order = rs.total_order_extension(rs.adjoint_weights());
  CHECK(order.size() == 13);
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    CHECK(rs.two_rho_pairing(order[i]) <= rs.two_rho_pairing(order[i + 1]));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(!(rs.dominance_leq(order[i], order[j]) && order[i] != order[j]));
  CHECK(order.back() == rs.theta());
}

TEST_CASE("coweight names resolve against the system") {
  RootSystem rs = RootSystem::build(RootType::A, 3);
  CHECK(rs.parse_coweight("theta") == Coweight({1, 0, 1}));
  CHECK(rs.parse_coweight("zero") == Coweight::zero(3));
  CHECK(rs.parse_coweight("omega_2") == Coweight({0, 1, 0}));
  CHECK(rs.parse_coweight("alpha_1") == Coweight({2, -1, 0}));
  CHECK(rs.parse_coweight("[1,-1,2]") == Coweight({1, -1, 2}));
  CHECK(rs.parse_coweight("rho") == Coweight({1, 1, 1}));
  CHECK_THROWS(rs.parse_coweight("omega_4"));
  CHECK_THROWS(rs.parse_coweight("1,2"));
  CHECK_THROWS(rs.parse_coweight("sigma"));
}
