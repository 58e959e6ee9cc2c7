#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "mvf/linalg.hpp"

using namespace mvf;

namespace {

Rational det_by_minors(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Rational total;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Rational term = a[0][j] * det_by_minors(minor);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

// Largest k with a nonzero k x k minor.
int rank_by_minors(const ExactMatrix& m) {
  const int r = m.rows(), c = m.cols();
  int best = 0;
  for (int k = 1; k <= std::min(r, c); ++k) {
    bool found = false;
    for (unsigned rows = 0; rows < (1u << r) && !found; ++rows) {
      if (__builtin_popcount(rows) != k) continue;
      for (unsigned cols = 0; cols < (1u << c) && !found; ++cols) {
        if (__builtin_popcount(cols) != k) continue;
        std::vector<std::vector<Rational>> sub;
        for (int i = 0; i < r; ++i) {
          if (!(rows >> i & 1)) continue;
          sub.emplace_back();
          for (int j = 0; j < c; ++j)
            if (cols >> j & 1) sub.back().push_back(m.at(i, j));
        }
        if (!det_by_minors(sub).is_zero()) found = true;
      }
    }
    if (found) best = k;
  }
  return best;
}

ExactMatrix random_matrix(std::mt19937_64& rng, int r, int c, int zero_bias) {
  std::uniform_int_distribution<int> val(-3, 3), z(0, zero_bias);
  ExactMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (z(rng) == 0) m.set(i, j, Rational(val(rng), 1 + (val(rng) + 3) % 3));
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
  Rational a(6, -4);
  CHECK(a.to_string() == "-3/2");
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK((Rational(1, 3) * Rational(3)).is_one());
  CHECK(Rational::parse("10/-4") == Rational(-5, 2));
  CHECK(Rational(4, 2).is_integer());
  CHECK(Rational(-7, 3).inverse() == Rational(-3, 7));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational overflow promotes and agrees with mpq") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> big(-(1LL << 62), 1LL << 62);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t p = big(rng), q = big(rng) | 1, r = big(rng), s = big(rng) | 1;
    Rational x(p, q), y(r, s);
    mpq_class X(mpz_class(std::to_string(p)), mpz_class(std::to_string(q)));
    mpq_class Y(mpz_class(std::to_string(r)), mpz_class(std::to_string(s)));
    X.canonicalize();
    Y.canonicalize();
    CHECK((x + y).to_mpq() == X + Y);
    CHECK((x * y).to_mpq() == X * Y);
    CHECK((x - y).to_mpq() == X - Y);
    if (r != 0) CHECK((x / y).to_mpq() == X / Y);
  }
  Rational huge(std::int64_t(1) << 62);
  Rational sq = huge * huge;
  CHECK(!sq.is_small());
  CHECK((sq / huge) == huge);
  CHECK((sq / huge).is_small());
}

TEST_CASE("rref rank matches the largest nonzero minor") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    ExactMatrix m = random_matrix(rng, 2 + t % 3, 2 + (t / 3) % 3, t % 4);
    CHECK(rank(m) == rank_by_minors(m));
  }
}

TEST_CASE("rref of a small matrix") {
  ExactMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  RrefResult r = rref(m);
  CHECK(r.rank == 2);
  CHECK(r.pivot_cols == std::vector<int>{0, 1});
  CHECK(r.reduced == ExactMatrix{{1, 0, 1}, {0, 1, 1}, {0, 0, 0}});
}

TEST_CASE("nullspace vectors are killed and complete") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    ExactMatrix m = random_matrix(rng, 2 + t % 4, 3 + t % 5, 2);
    auto basis = nullspace_basis(m);
    CHECK(static_cast<int>(basis.size()) == m.cols() - rank(m));
    for (const auto& v : basis)
      for (const auto& x : multiply(m, v)) CHECK(x.is_zero());
  }
  ExactMatrix one{{1, 1}};
  auto ns = nullspace_basis(one);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == -ns[0][1]);
}

TEST_CASE("solve finds consistent solutions and rejects inconsistent ones") {
  ExactMatrix m{{1, 1}, {1, -1}};
  auto x = solve(m, {Rational(3), Rational(1)});
  REQUIRE(x);
  CHECK((*x)[0] == Rational(2));
  CHECK((*x)[1] == Rational(1));
  ExactMatrix singular{{1, 1}, {2, 2}};
  CHECK(!solve(singular, {Rational(1), Rational(3)}));
}

TEST_CASE("echelon basis membership and tags") {
  EchelonBasis b(4);
  b.insert(sparse_from_dense({1, 1, 0, 0}));
  b.insert(sparse_from_dense({0, 1, 1, 0}));
  CHECK(b.rank() == 2);
  CHECK(b.contains(sparse_from_dense({1, 2, 1, 0})));
  CHECK(!b.contains(sparse_from_dense({0, 0, 0, 1})));
  CHECK(b.insert(sparse_from_dense({2, 3, 1, 0})).empty());

  // Columns 2.. are tags recording the combination.
  EchelonBasis tagged(4, 2);
  tagged.insert(sparse_from_dense({1, 0, 1, 0}));
  SparseVec rest = tagged.insert(sparse_from_dense({2, 0, 0, 1}));
  // Leading part cancels, leaving -2 * tag0 + tag1: a kernel relation.
  CHECK(rest == sparse_from_dense({0, 0, -2, 1}));
}

TEST_CASE("matrix product and transpose") {
  ExactMatrix a{{1, 2}, {0, 1}};
  ExactMatrix b{{1, 0}, {3, 1}};
  CHECK(a * b == ExactMatrix{{7, 2}, {3, 1}});
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(ExactMatrix::identity(2) * a == a);
  CHECK_THROWS(a * ExactMatrix(3, 1));
}
