#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rmi {

using BigInt = boost::multiprecision::cpp_int;

// C(n, k); zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

// C(n, k) when it fits in 64 bits.
std::optional<std::uint64_t> binomial_u64(std::uint64_t n, std::uint64_t k);

std::optional<std::uint64_t> to_u64(const BigInt& v);

inline std::string to_string(const BigInt& v) { return v.str(); }

// Checked arithmetic on exponents and counts; throws OverflowError.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace rmi
