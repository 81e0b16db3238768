#pragma once

// Z(n, d) = #{a in Z^n_{>=0} : prod(a_i + 1) <= d}.

#include <cstddef>
#include <cstdint>

#include "rmi/bigint.hpp"

namespace rmi {

// Z depends only on floor(d); d < 1 gives 0. Blocks of equal floor(m / a) are
// summed together, with a per-call memo keyed by (order, threshold).
BigInt z_count(std::size_t n, std::uint64_t d);
// Floors d first; non-finite or negative d throws PreconditionError.
BigInt z_count(std::size_t n, double d);

// Direct lattice enumeration. Throws GuardExceeded past `guard` points visited.
BigInt z_count_bruteforce(std::size_t n, std::uint64_t d, std::uint64_t guard = 100'000'000);

// d (ln d)^(n-1) / (n-1)!, d > 1.
double z_asymptotic(std::size_t n, double d);

// floor(d) as an integer, nudged so that a d within a few ulps above an integer
// (D^x evaluated in floating point) is read as that integer.
std::uint64_t floor_threshold(double d);

}  // namespace rmi
