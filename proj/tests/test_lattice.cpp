#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "toricob/lattice.hpp"

using namespace toricob;
using th::V;

TEST_CASE("vector basics") {
  CHECK(dot(V({1, 2, 3}), V({4, 5, 6})) == 32);
  CHECK(content(V({6, -4, 10})) == 2);
  CHECK(content(V({0, 0})) == 0);
  CHECK(is_primitive(V({2, 3})));
  CHECK_FALSE(is_primitive(V({2, 4})));
  CHECK(primitive(V({-2, -4})) == V({-1, -2}));
  CHECK_THROWS_AS(is_primitive(V({0, 0})), ToricError);
  CHECK(vec_less(V({0, 1}), V({1, 0})));
  CHECK(vec_less(V({-1, 5}), V({0, 0})));
}

TEST_CASE("hermite normal form") {
  Mat m = Mat::from_rows({V({2, 4}), V({1, 1})}, 2);
  Mat h = hermite_normal_form(m);
  CHECK(h.to_rows() == std::vector<Vec>{V({1, 1}), V({0, 2})});

  // canonical: reduced above pivots, positive pivots
  Mat m2 = Mat::from_rows({V({3, 3, 1}), V({0, 5, 2})}, 3);
  Mat h2 = hermite_normal_form(m2);
  REQUIRE(h2.rows == 2);
  CHECK(h2.at(0, 0) > 0);
  CHECK(h2.at(1, 0) == 0);

  CHECK(rank_of(Mat::from_rows({V({1, 2}), V({2, 4})}, 2)) == 1);
  CHECK(rank_of(Mat::from_rows({V({1, 0}), V({0, 1})}, 2)) == 2);
}

TEST_CASE("smith normal form pinned examples") {
  {
    Snf s = smith_normal_form(Mat::from_rows({V({2, 0}), V({0, 3})}, 2));
    CHECK(s.d.at(0, 0) == 1);
    CHECK(s.d.at(1, 1) == 6);
    CHECK(mat_mul(mat_mul(s.u, Mat::from_rows({V({2, 0}), V({0, 3})}, 2)), s.v) == s.d);
  }
  {
    Snf s = smith_normal_form(Mat::from_rows({V({1, 1}), V({0, 2})}, 2));
    CHECK(s.d.at(0, 0) == 1);
    CHECK(s.d.at(1, 1) == 2);
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m.at(i, j) = Int(int(rng() % 21) - 10);
    Snf s = smith_normal_form(m);
    CHECK(mat_mul(mat_mul(s.u, m), s.v) == s.d);
    // diagonal, nonnegative, divisibility chain
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
    for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) {
      CHECK(s.d.at(i, i) >= 0);
      if (s.d.at(i, i) != 0) CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
      if (s.d.at(i, i) == 0) CHECK(s.d.at(i + 1, i + 1) == 0);
    }
    // u, v unimodular: their rows span all of Z^n
    CHECK(saturation_index(s.u.to_rows(), r) == 1);
    CHECK(saturation_index(s.v.to_rows(), c) == 1);
  }
}

TEST_CASE("kernel and solve") {
  std::vector<Vec> k = kernel_basis(Mat::from_rows({V({1, 1, -1})}, 3));
  CHECK(k == std::vector<Vec>{V({1, 0, 1}), V({0, 1, 1})});

  std::vector<Vec> k2 = kernel_basis(Mat::from_rows({V({2, 4})}, 2));
  CHECK(k2 == std::vector<Vec>{V({2, -1})});

  auto x = solve(Mat::from_rows({V({2, 0}), V({0, 3})}, 2), V({4, 9}));
  REQUIRE(x.has_value());
  CHECK(*x == V({2, 3}));
  CHECK_FALSE(solve(Mat::from_rows({V({2})}, 1), V({3})).has_value());

  auto q = solve_rational(Mat::from_rows({V({2})}, 1), V({3}));
  REQUIRE(q.has_value());
  CHECK((*q)[0] == Rat(3, 2));
  CHECK_FALSE(solve_rational(Mat::from_rows({V({1}), V({1})}, 1), V({1, 2})).has_value());

  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_floor(Rat(-7, 2)) == -4);
  CHECK(rat_floor(Rat(4)) == 4);
}

TEST_CASE("saturation") {
  // lattice spanned by (2,0),(0,2) saturates to Z^2
  std::vector<Vec> s = lattice_saturation({V({2, 0}), V({0, 2})}, 2);
  CHECK(s == std::vector<Vec>{V({1, 0}), V({0, 1})});
  // span of (1,1,0) saturates to itself
  std::vector<Vec> s2 = lattice_saturation({V({2, 2, 0})}, 3);
  CHECK(s2 == std::vector<Vec>{V({1, 1, 0})});
  CHECK(saturation_index({V({2, 0}), V({0, 3})}, 2) == 6);
  CHECK(saturation_index({V({1, 1}), V({1, -1})}, 2) == 2);
  CHECK(saturation_index({V({2, 2, 0})}, 3) == 2);
  CHECK_THROWS_AS(saturation_index({V({1, 1}), V({2, 2})}, 2), ToricError);
}

TEST_CASE("reduce mod lattice") {
  std::vector<Vec> basis = {V({1, 0, 1}), V({0, 1, 1})};
  CHECK(reduce_mod_lattice(V({3, 2, 0}), basis) == V({0, 0, -5}));
  CHECK(reduce_mod_lattice(V({0, 0, 7}), basis) == V({0, 0, 7}));
}

TEST_CASE("quotient by a primitive direction") {
  {
    QuotientMap q = quotient_by(V({1, 1, -1}));
    CHECK(q.proj.to_rows() == std::vector<Vec>{V({1, 0, 1}), V({0, 1, 1})});
    CHECK(is_zero(q.apply(V({1, 1, -1}))));
    CHECK(mat_mul(q.proj, q.section) == Mat::identity(2));
  }
  {
    QuotientMap q = quotient_by(V({0, 0, 1}));
    CHECK(q.proj.to_rows() == std::vector<Vec>{V({1, 0, 0}), V({0, 1, 0})});
    CHECK(q.apply(V({5, 7, 9})) == V({5, 7}));
  }
  CHECK_THROWS_AS(quotient_by(V({2, 4})), ToricError);
  CHECK_THROWS_AS(quotient_by(V({0, 0})), ToricError);
}
