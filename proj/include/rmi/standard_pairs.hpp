#pragma once

// Standard pairs of a monomial ideal.
//
// (x^a, S) is admissible when supp(a) and S are disjoint and every monomial of
// x^a * K[S] lies outside I. Admissible pairs are ordered by
// (a, S) <= (b, T) iff x^a | x^b and supp(b - a) | T is inside S; the standard
// pairs are the minimal admissible pairs. Their number is the arithmetic
// degree, and the number with |S| = dim I is the degree.

#include <cstdint>
#include <map>
#include <vector>

#include "rmi/bigint.hpp"
#include "rmi/ideal.hpp"
#include "rmi/staircase.hpp"

namespace rmi {

struct StandardPair {
  Monomial alpha;     // original coordinates, zero on `free_set`
  VariableSet free_set;

  friend bool operator==(const StandardPair&, const StandardPair&) = default;
};

// Sorted by |S|, then S as a bitmask, then alpha in grlex order.
bool pair_less(const StandardPair& a, const StandardPair& b);

struct PairCensus {
  std::size_t n = 0;
  std::vector<StandardPair> pairs;         // explicit list, possibly truncated
  bool truncated = false;
  std::vector<BigInt> counts_by_free_size;  // index |S|, length n + 1
  std::map<std::uint64_t, BigInt> counts_by_free_set;  // keyed by S bitmask; nonzero only
  BigInt adeg = 0;
  std::size_t dim = 0;
  BigInt deg = 0;
};

struct CensusOptions {
  // Cap on the work (outer cells) visited per free set.
  std::uint64_t guard = kDefaultGuard;
  std::size_t pair_cap = 1'000'000;
  bool collect_pairs = true;
};

bool is_admissible(const MonomialIdeal& ideal, const Monomial& alpha, const VariableSet& free_set);

// Admissible, and for each i outside S the one-variable extension
// (a with a_i = 0, S + {i}) is not admissible.
bool is_standard(const MonomialIdeal& ideal, const Monomial& alpha, const VariableSet& free_set);

// Throws UnitIdealError for the unit ideal (never representable here) and
// GuardExceeded per CensusOptions::guard.
PairCensus enumerate_standard_pairs(const MonomialIdeal& ideal, const CensusOptions& opts = {});

// Independent oracle: lists every admissible pair with alpha in [0, box_bound]^T
// (admissibility checked by scanning x^a * K[S] directly) and keeps the
// minimal ones by explicit pairwise order comparisons. Small instances only.
PairCensus brute_force_standard_pairs(const MonomialIdeal& ideal, std::uint64_t box_bound,
                                      std::uint64_t guard = 10'000'000);

// deg(I) from the census, cross-checked against the sum over |T| = n - dim of
// standard-monomial counts of I|_T. Throws InternalError if they differ.
BigInt degree(const MonomialIdeal& ideal, const CensusOptions& opts = {});
BigInt arithmetic_degree(const MonomialIdeal& ideal, const CensusOptions& opts = {});

// sum over T with |T| = n - dim of count_standard_monomials(I|_T); unit
// restrictions contribute 0.
BigInt degree_by_restrictions(const MonomialIdeal& ideal, std::size_t dim);

// sum over pairs of C(t - |a| + |S| - 1, |S| - 1); for |S| = 0 a pair
// contributes 1 iff t = |a|. Needs an untruncated census.
BigInt hilbert_sum(const PairCensus& census, std::uint64_t t);

// L(f, h) over t = |T| coordinates: prod(a_i + 1) < f and (a_i + 1)^(t-1) > h
// for every i. Exponent vectors are in T-local coordinates.
std::vector<Monomial> region_L(double f, double h, const VariableSet& vars);
BigInt region_L_size(double f, double h, std::size_t t);

}  // namespace rmi
