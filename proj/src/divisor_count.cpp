#include "rmi/divisor_count.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "rmi/errors.hpp"

namespace rmi {

namespace {

using u128 = unsigned __int128;

struct ZMemo {
  std::unordered_map<std::uint64_t, u128> table;

  static std::uint64_t key(std::size_t n, std::uint64_t m) {
    return (static_cast<std::uint64_t>(n) << 56) ^ m;
  }

  u128 eval(std::size_t n, std::uint64_t m) {
    if (m == 0) return 0;
    if (n == 1) return m;
    if (m == 1) return 1;
    const auto k = key(n, m);
    if (auto it = table.find(k); it != table.end()) return it->second;
    u128 total = 0;
    for (std::uint64_t a = 1; a <= m;) {
      const std::uint64_t q = m / a;
      const std::uint64_t a_hi = m / q;
      u128 term = 0;
      if (__builtin_mul_overflow(static_cast<u128>(a_hi - a + 1), eval(n - 1, q), &term) ||
          __builtin_add_overflow(total, term, &total)) {
        throw OverflowError("Z(n, d) exceeds 128 bits");
      }
      a = a_hi + 1;
    }
    table.emplace(k, total);
    return total;
  }
};

BigInt from_u128(u128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

}  // namespace

std::uint64_t floor_threshold(double d) {
  if (!std::isfinite(d) || d < 0) throw PreconditionError("threshold must be finite and >= 0");
  if (d >= 18446744073709549568.0) throw PreconditionError("threshold exceeds 64 bits");
  const double r = std::nearbyint(d);
  if (std::fabs(d - r) <= 4 * std::numeric_limits<double>::epsilon() * std::fabs(r)) {
    return static_cast<std::uint64_t>(r);
  }
  return static_cast<std::uint64_t>(std::floor(d));
}

BigInt z_count(std::size_t n, std::uint64_t d) {
  if (n < 1) throw PreconditionError("Z(n, d) needs n >= 1");
  ZMemo memo;
  return from_u128(memo.eval(n, d));
}

BigInt z_count(std::size_t n, double d) { return z_count(n, floor_threshold(d)); }

BigInt z_count_bruteforce(std::size_t n, std::uint64_t d, std::uint64_t guard) {
  if (n < 1) throw PreconditionError("Z(n, d) needs n >= 1");
  std::uint64_t visited = 0;
  // Walk every vector of values v_i = a_i + 1 with product <= d.
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t prod) -> std::uint64_t {
    if (i == n) {
      if (++visited > guard) throw GuardExceeded("z_count_bruteforce guard exceeded");
      return 1;
    }
    std::uint64_t total = 0;
    for (std::uint64_t v = 1; prod * v <= d; ++v) total += self(self, i + 1, prod * v);
    return total;
  };
  if (d < 1) return 0;
  return rec(rec, 0, 1);
}

double z_asymptotic(std::size_t n, double d) {
  if (n < 1) throw PreconditionError("Z(n, d) needs n >= 1");
  if (!(d > 1)) throw PreconditionError("z_asymptotic needs d > 1");
  return d * std::pow(std::log(d), static_cast<double>(n - 1)) / std::tgamma(static_cast<double>(n));
}

}  // namespace rmi
