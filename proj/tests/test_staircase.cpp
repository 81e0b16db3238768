#include "doctest.h"

#include <random>

#include "rmi/errors.hpp"
#include "rmi/staircase.hpp"
#include "support/random_ideals.hpp"
#include "support/table1.hpp"

using namespace rmi;

namespace {

MonomialIdeal ideal(std::size_t n, std::vector<Monomial> gens) { return minimalize(std::move(gens), n); }

// Visits every exponent vector in [0, bound]^n.
template <class F>
void for_box(std::size_t n, std::uint64_t bound, F&& f) {
  Monomial m(n);
  while (true) {
    f(m);
    std::size_t i = n;
    while (i-- > 0) {
      if (m[i] < bound) {
        m.set(i, m[i] + 1);
        break;
      }
      m.set(i, 0);
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

std::uint64_t box_product(const Monomial& m) {
  std::uint64_t v = 1;
  for (auto e : m.exponents()) v *= e + 1;
  return v;
}

}  // namespace

TEST_CASE("standard monomial counts") {
  CHECK(count_standard_monomials(ideal(2, {{2, 0}, {0, 3}})) == 6);
  CHECK(count_standard_monomials(ideal(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})) == 1);
  CHECK(count_standard_monomials(ideal(2, {{2, 0}, {1, 1}, {0, 3}})) == 4);
  CHECK(count_standard_monomials(ideal(1, {{7}})) == 7);
  CHECK_THROWS_AS(count_standard_monomials(ideal(2, {{1, 1}})), NotZeroDimensional);
  CHECK_THROWS_AS(count_standard_monomials(MonomialIdeal::zero(2)), NotZeroDimensional);

  SUBCASE("pure powers give the box volume") {
    CHECK(count_standard_monomials(ideal(3, {{3, 0, 0}, {0, 5, 0}, {0, 0, 7}})) == 105);
  }
  SUBCASE("matches direct enumeration and the Hilbert sum") {
    std::mt19937_64 rng(8);
    int tested = 0;
    for (int rep = 0; rep < 400 && tested < 200; ++rep) {
      const std::size_t n = 1 + rep % 3;
      auto gens = fixtures::sparse_ideal(rng, n, 6, 6).generators();
      for (std::size_t i = 0; i < n; ++i) {
        Monomial pure(n);
        pure.set(i, 2 + rng() % 6);
        gens.push_back(pure);
      }
      const auto I = minimalize(gens, n);
      BigInt direct = 0;
      for_box(n, 8, [&](const Monomial& m) { direct += contains(I, m) ? 0 : 1; });
      const auto count = count_standard_monomials(I);
      CHECK(count == direct);
      BigInt by_degree = 0;
      for (std::uint64_t t = 0; t <= 8 * n; ++t) by_degree += hilbert_function(I, t);
      CHECK(count == by_degree);
      ++tested;
    }
  }
}

TEST_CASE("hilbert function") {
  CHECK(hilbert_function(MonomialIdeal::zero(2), 3) == 4);
  CHECK(hilbert_function(ideal(2, {{1, 1}}), 5) == 2);
  CHECK(hilbert_function(ideal(3, {{1, 1, 0}}), 2) == 5);
  CHECK(hilbert_function(ideal(2, {{2, 0}, {0, 3}}), 1) == 2);
  CHECK(hilbert_function(ideal(2, {{2, 0}, {0, 3}}), 0) == 1);
}

TEST_CASE("band check") {
  const auto& row = fixtures::table1()[0];
  const auto I = fixtures::table1_ideal(row);
  const Monomial g{8, 35, 5};
  CHECK(divisor_box_volume(g) == 1944);
  // the first generator sits inside (65^1.75, 65^2.25)
  CHECK(band_check(ideal(3, {g}), {1479.5, 12064, 12064, 65}).pass);
  CHECK(band_check(MonomialIdeal::zero(3), {1e9, 2e9, 2e9, 65}).pass);
  CHECK(band_check(I, {}).pass);
  const auto fail = band_check(I, {1944, 1e9, 1e9, 65});
  CHECK_FALSE(fail.pass);
  REQUIRE(fail.witness);
  CHECK(divisor_box_volume(*fail.witness) <= 1944);
}

TEST_CASE("max staircase product") {
  CHECK(max_staircase_product(ideal(2, {{2, 0}, {0, 3}}), 3) == 6);
  CHECK(max_staircase_product(ideal(2, {{2, 0}, {0, 3}}), 10) == 6);
  CHECK(max_staircase_product(MonomialIdeal::zero(1), 9) == 10);
  CHECK(max_staircase_product(ideal(2, {{1, 1}}), 10) == 11);
  CHECK(tail_check(ideal(2, {{2, 0}, {0, 3}}), 6, 10));
  CHECK_FALSE(tail_check(ideal(2, {{2, 0}, {0, 3}}), 5.5, 10));
  CHECK_THROWS_AS(max_staircase_product(MonomialIdeal::zero(3), 1000, 100), GuardExceeded);

  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 1 + rep % 3;
    const auto raw = fixtures::random_generators(rng, n, 7, 0.12);
    const auto I = minimalize(raw, n);
    BigInt prev = 0;
    for (std::uint64_t D = 1; D <= 7; ++D) {
      std::uint64_t best = 0;
      for_box(n, D, [&](const Monomial& m) {
        if (m.total_degree() <= D && !contains(I, m)) best = std::max(best, box_product(m));
      });
      const auto got = max_staircase_product(I, D);
      CHECK(got == best);
      CHECK(got >= prev);
      prev = got;
      auto redundant = raw;
      for (const auto& g : I.generators()) {
        Monomial up = g;
        up.set(0, up[0] + 1);
        redundant.push_back(up);
      }
      CHECK(max_staircase_product(minimalize(redundant, n), D) == got);
    }
  }
}

TEST_CASE("staircase corners") {
  auto c = staircase_corners(ideal(2, {{2, 0}, {0, 3}}));
  CHECK(c.outer == std::vector<Monomial>{{0, 3}, {2, 0}});
  CHECK(c.inner == std::vector<Monomial>{{2, 3}});
  c = staircase_corners(ideal(2, {{3, 0}, {1, 1}, {0, 2}}));
  CHECK(c.outer == std::vector<Monomial>{{0, 2}, {1, 1}, {3, 0}});
  CHECK(c.inner == std::vector<Monomial>{{1, 2}, {3, 1}});
  CHECK(staircase_corners(ideal(2, {{4, 4}})).inner.empty());
  CHECK_THROWS_AS(staircase_corners(ideal(3, {{1, 0, 0}})), WrongArity);

  // Each inner corner is the lcm of two neighbouring generators: it lies in I,
  // and stepping back diagonally gives a standard monomial whose two
  // coordinate successors are both in I.
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    const auto I = fixtures::sparse_ideal(rng, 2, 8, 9);
    if (I.is_zero()) continue;
    for (const auto& q : staircase_corners(I).inner) {
      CHECK(contains(I, q));
      REQUIRE(q[0] > 0);
      REQUIRE(q[1] > 0);
      const Monomial back{q[0] - 1, q[1] - 1};
      CHECK_FALSE(contains(I, back));
      CHECK(contains(I, Monomial{q[0], q[1] - 1}));
      CHECK(contains(I, Monomial{q[0] - 1, q[1]}));
    }
  }
}
