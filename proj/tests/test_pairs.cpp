#include "doctest.h"

#include <random>
#include <set>

#include "rmi/errors.hpp"
#include "rmi/staircase.hpp"
#include "rmi/standard_pairs.hpp"
#include "support/random_ideals.hpp"
#include "support/table1.hpp"

using namespace rmi;

namespace {

MonomialIdeal ideal(std::size_t n, std::vector<Monomial> gens) { return minimalize(std::move(gens), n); }

std::vector<StandardPair> pairs_of(const PairCensus& c) { return c.pairs; }

std::uint64_t max_exponent(const MonomialIdeal& I) {
  std::uint64_t m = 0;
  for (const auto& g : I.generators()) {
    for (auto e : g.exponents()) m = std::max(m, e);
  }
  return m;
}

bool in_pair_region(const StandardPair& p, const Monomial& m) {
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (p.free_set.contains(i)) continue;
    if (m[i] != p.alpha[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("admissibility") {
  const auto xy = ideal(2, {{1, 1}});
  CHECK(is_admissible(xy, Monomial{0, 0}, VariableSet::of(2, {0})));
  CHECK_FALSE(is_admissible(xy, Monomial{0, 0}, VariableSet::all(2)));
  CHECK_FALSE(is_admissible(xy, Monomial{1, 0}, VariableSet::of(2, {0})));  // support meets S
  const auto box = ideal(2, {{2, 0}, {0, 3}});
  CHECK(is_admissible(box, Monomial{1, 2}, VariableSet::empty(2)));
  CHECK_FALSE(is_admissible(box, Monomial{2, 2}, VariableSet::empty(2)));
  CHECK_THROWS_AS(is_admissible(box, Monomial{1, 2, 0}, VariableSet::empty(2)), DimensionMismatch);
}

TEST_CASE("standardness") {
  const auto xy = ideal(2, {{1, 1}});
  CHECK(is_standard(xy, Monomial{0, 0}, VariableSet::of(2, {0})));
  CHECK_FALSE(is_standard(xy, Monomial{0, 0}, VariableSet::all(2)));
  const auto box = ideal(2, {{2, 0}, {0, 3}});
  CHECK(is_standard(box, Monomial{1, 2}, VariableSet::empty(2)));
  CHECK(is_standard(box, Monomial{0, 0}, VariableSet::empty(2)));
  CHECK(is_standard(MonomialIdeal::zero(3), Monomial(3), VariableSet::all(3)));
}

TEST_CASE("census examples") {
  SUBCASE("box ideal") {
    const auto c = enumerate_standard_pairs(ideal(2, {{2, 0}, {0, 3}}));
    CHECK(c.pairs.size() == 6);
    for (const auto& p : c.pairs) CHECK(p.free_set.size() == 0);
    CHECK(c.adeg == 6);
    CHECK(c.deg == 6);
    CHECK(c.dim == 0);
    CHECK(pairs_of(c) == pairs_of(brute_force_standard_pairs(ideal(2, {{2, 0}, {0, 3}}), 6)));
  }
  SUBCASE("xy in two variables") {
    const auto c = enumerate_standard_pairs(ideal(2, {{1, 1}}));
    const std::vector<StandardPair> want = {{Monomial{0, 0}, VariableSet::of(2, {0})},
                                            {Monomial{0, 0}, VariableSet::of(2, {1})}};
    CHECK(c.pairs == want);
    CHECK(brute_force_standard_pairs(ideal(2, {{1, 1}}), 4).pairs == want);
  }
  SUBCASE("xy in three variables") {
    const auto c = enumerate_standard_pairs(ideal(3, {{1, 1, 0}}));
    const std::vector<StandardPair> want = {{Monomial{0, 0, 0}, VariableSet::of(3, {0, 2})},
                                            {Monomial{0, 0, 0}, VariableSet::of(3, {1, 2})}};
    CHECK(c.pairs == want);
    CHECK(c.adeg == 2);
    CHECK(c.deg == 2);
    CHECK(c.dim == 2);
  }
  SUBCASE("zero ideal") {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto c = enumerate_standard_pairs(MonomialIdeal::zero(n));
      REQUIRE(c.pairs.size() == 1);
      CHECK(c.pairs[0].free_set == VariableSet::all(n));
      CHECK(c.pairs[0].alpha == Monomial(n));
      CHECK(c.deg == 1);
      CHECK(c.adeg == 1);
      CHECK(c.dim == n);
      CHECK(degree(MonomialIdeal::zero(n)) == 1);
      CHECK(arithmetic_degree(MonomialIdeal::zero(n)) == 1);
    }
    CHECK(brute_force_standard_pairs(MonomialIdeal::zero(2), 3).pairs.size() == 1);
  }
}

TEST_CASE("reference table") {
  for (const auto& row : fixtures::table1()) {
    const auto I = fixtures::table1_ideal(row);
    const auto c = enumerate_standard_pairs(I);
    CHECK(c.dim == row.expected[0]);
    CHECK(c.deg == row.expected[1]);
    CHECK(c.counts_by_free_size[0] == row.expected[2]);
    CHECK(c.counts_by_free_size[1] == row.expected[3]);
    CHECK(c.counts_by_free_size[2] == row.expected[4]);
    CHECK(c.counts_by_free_size[3] == 0);
    CHECK(c.adeg == row.expected[2] + row.expected[3] + row.expected[4]);
    CHECK(c.pairs.size() == c.adeg);
    CHECK(degree(I) == row.expected[1]);
    CHECK(degree_by_restrictions(I, c.dim) == row.expected[1]);
    // spot check: every listed pair passes the literal test
    for (std::size_t i = 0; i < c.pairs.size(); i += 97) {
      CHECK(is_standard(I, c.pairs[i].alpha, c.pairs[i].free_set));
    }
  }
}

TEST_CASE("census agrees with the brute-force oracle") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 2 + rep % 2;
    const std::uint64_t D = 3 + rng() % (n == 2 ? 10 : 6);
    const double p = rep % 4 < 2 ? 0.1 : 0.3;
    const auto I = fixtures::random_ideal(rng, n, D, p);
    const auto fast = enumerate_standard_pairs(I);
    const auto slow = brute_force_standard_pairs(I, std::max<std::uint64_t>(max_exponent(I), 1));
    CHECK(fast.pairs == slow.pairs);
    CHECK(fast.counts_by_free_size == slow.counts_by_free_size);
    for (const auto& pr : fast.pairs) CHECK(is_standard(I, pr.alpha, pr.free_set));
  }
}

TEST_CASE("census invariants and cover property") {
  std::mt19937_64 rng(314);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 2;
    const std::uint64_t D = 6;
    const auto I = fixtures::random_ideal(rng, n, D, 0.12);
    const auto c = enumerate_standard_pairs(I);
    BigInt sum = 0;
    for (const auto& v : c.counts_by_free_size) sum += v;
    CHECK(sum == c.adeg);
    CHECK(c.deg == c.counts_by_free_size[c.dim]);
    for (std::size_t i = c.dim + 1; i <= n; ++i) CHECK(c.counts_by_free_size[i] == 0);
    CHECK(degree_by_restrictions(I, c.dim) == c.deg);

    // Every standard monomial of degree <= D lies in some pair region, and no
    // region meets the ideal (checked on the degree-capped box).
    Monomial m(n);
    while (true) {
      if (m.total_degree() <= D) {
        const bool member = contains(I, m);
        bool covered = false;
        for (const auto& pr : c.pairs) {
          if (in_pair_region(pr, m)) {
            covered = true;
            CHECK_FALSE(member);
          }
        }
        if (!member) CHECK(covered);
      }
      std::size_t i = n;
      while (i-- > 0) {
        if (m[i] < D) {
          m.set(i, m[i] + 1);
          break;
        }
        m.set(i, 0);
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }

    // The Hilbert cover-sum dominates, with equality in dimension zero.
    for (std::uint64_t t = 0; t <= 10; ++t) {
      const auto hs = hilbert_sum(c, t);
      const auto hf = hilbert_function(I, t);
      CHECK(hs >= hf);
      if (c.dim == 0) CHECK(hs == hf);
    }
    if (c.dim == 0) {
      CHECK(c.adeg == c.deg);
      CHECK(c.deg == count_standard_monomials(I));
    }
  }
}

TEST_CASE("restrictions of size n - dim carry no positive-dimensional pairs") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 100; ++rep) {
    const auto I = fixtures::sparse_ideal(rng, 3, 5, 4);
    const std::size_t dim = krull_dimension(I);
    for (std::uint64_t m = 0; m < 8; ++m) {
      const VariableSet T(3, m);
      if (T.size() != 3 - dim || T.size() == 0) continue;
      const auto r = restrict(I, T);
      if (r.is_unit()) continue;
      const auto c = enumerate_standard_pairs(r.ideal());
      for (const auto& pr : c.pairs) CHECK(pr.free_set.size() == 0);
    }
  }
}

TEST_CASE("hilbert sum") {
  CHECK(hilbert_sum(enumerate_standard_pairs(ideal(2, {{1, 1}})), 5) == 2);
  CHECK(hilbert_sum(enumerate_standard_pairs(ideal(3, {{1, 1, 0}})), 2) == 6);
  CHECK(hilbert_function(ideal(3, {{1, 1, 0}}), 2) == 5);
  CHECK(hilbert_sum(enumerate_standard_pairs(ideal(2, {{2, 0}, {0, 3}})), 1) == 2);
  auto truncated = enumerate_standard_pairs(ideal(2, {{2, 0}, {0, 3}}), {.pair_cap = 2});
  CHECK(truncated.truncated);
  CHECK(truncated.pairs.size() == 2);
  CHECK(truncated.adeg == 6);
  CHECK_THROWS_AS(hilbert_sum(truncated, 1), PreconditionError);
}

TEST_CASE("census guard") {
  const auto& row = fixtures::table1()[1];
  CHECK_THROWS_AS(enumerate_standard_pairs(fixtures::table1_ideal(row), {.guard = 5}), GuardExceeded);
}

TEST_CASE("region L") {
  const auto one = region_L(5, 0.5, VariableSet::all(1));
  CHECK(one == std::vector<Monomial>{{0}, {1}, {2}, {3}});
  CHECK(region_L_size(5, 0.5, 1) == 4);
  CHECK(region_L(5, 1.5, VariableSet::all(1)).empty());
  CHECK(region_L(6, 2, VariableSet::all(2)).empty());
  CHECK(region_L(1, 0, VariableSet::all(3)).empty());
  CHECK(region_L_size(0.5, 0, 2) == 0);
  CHECK_THROWS_AS(region_L(5, 0, VariableSet::empty(2)), PreconditionError);

  // against a direct scan
  for (std::size_t t = 1; t <= 3; ++t) {
    for (double f : {3.0, 7.5, 20.0, 64.0}) {
      for (double h : {0.2, 1.0, 2.5, 9.0}) {
        std::set<std::vector<std::uint64_t>> want;
        Monomial m(t);
        while (true) {
          double prod = 1;
          bool lower = true;
          for (auto e : m.exponents()) {
            prod *= static_cast<double>(e) + 1;
            lower = lower && std::pow(static_cast<double>(e) + 1, static_cast<double>(t - 1)) > h;
          }
          if (prod < f && lower) want.insert({m.exponents().begin(), m.exponents().end()});
          std::size_t i = t;
          while (i-- > 0) {
            if (m[i] < 70) {
              m.set(i, m[i] + 1);
              break;
            }
            m.set(i, 0);
          }
          if (i == static_cast<std::size_t>(-1)) break;
        }
        std::set<std::vector<std::uint64_t>> got;
        for (const auto& a : region_L(f, h, VariableSet::all(t))) got.insert({a.exponents().begin(), a.exponents().end()});
        CHECK(got == want);
        CHECK(region_L_size(f, h, t) == want.size());
      }
    }
  }
  // monotone: growing f or shrinking h only adds points
  for (std::size_t t = 1; t <= 3; ++t) {
    const auto small = region_L(30, 3, VariableSet::all(t));
    const auto large = region_L(60, 1, VariableSet::all(t));
    for (const auto& a : small) CHECK(std::find(large.begin(), large.end(), a) != large.end());
  }
}
