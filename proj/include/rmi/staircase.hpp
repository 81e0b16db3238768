#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rmi/bigint.hpp"
#include "rmi/ideal.hpp"

namespace rmi {

inline constexpr std::uint64_t kDefaultGuard = 100'000'000;

// Hyperbolic band on prod(a_i + 1): lower f, upper g, tail h, degree cap D.
struct BandSpec {
  double f = 0;
  double g = std::numeric_limits<double>::infinity();
  double h = std::numeric_limits<double>::infinity();
  std::uint64_t max_degree = 0;
};

// prod(a_i + 1), the number of divisors of x^a including 1.
BigInt divisor_box_volume(const Monomial& m);

// Number of standard monomials of a zero-dimensional ideal (its degree).
// Throws NotZeroDimensional when some variable has no pure power in G(I).
BigInt count_standard_monomials(const MonomialIdeal& ideal);

// Number of degree-t monomials outside the ideal; any dimension.
BigInt hilbert_function(const MonomialIdeal& ideal, std::uint64_t t);

struct BandResult {
  bool pass = true;
  std::optional<Monomial> witness;  // first generator outside (f, g)
};

// Every minimal generator satisfies f < prod(a_i + 1) < g.
BandResult band_check(const MonomialIdeal& ideal, const BandSpec& band);

// max prod(a_i + 1) over standard monomials a with |a| <= D. Visits at most
// `guard` prefixes of the first n-1 coordinates; throws GuardExceeded beyond.
BigInt max_staircase_product(const MonomialIdeal& ideal, std::uint64_t max_degree,
                             std::uint64_t guard = kDefaultGuard);

// max_staircase_product(I, D) <= h: every monomial of degree <= D beyond the
// tail hyperbola lies in I.
bool tail_check(const MonomialIdeal& ideal, double h, std::uint64_t max_degree,
                std::uint64_t guard = kDefaultGuard);

struct StaircaseCorners {
  std::vector<Monomial> outer;  // minimal generators, ascending first exponent
  std::vector<Monomial> inner;  // lcm of consecutive outer corners
};

// Two-variable staircase. Throws WrongArity unless n == 2.
StaircaseCorners staircase_corners(const MonomialIdeal& ideal);

}  // namespace rmi
