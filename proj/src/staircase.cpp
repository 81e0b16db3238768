#include "rmi/staircase.hpp"

#include <algorithm>
#include <limits>

#include "rmi/errors.hpp"

namespace rmi {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

Monomial drop_first(const Monomial& m) {
  return Monomial(m.exponents().subspan(1));
}

// Staircase walk over minimal generators of a zero-dimensional ideal in two
// variables: sum over outer corners of (next x - x) * y.
BigInt count_zero_dim_2(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
  BigInt total = 0;
  for (std::size_t j = 0; j + 1 < gens.size(); ++j) {
    total += BigInt(gens[j + 1][0] - gens[j][0]) * gens[j][1];
  }
  return total;
}

// Slices by the first coordinate; the slice is constant between consecutive
// distinct first exponents of the generators.
BigInt count_zero_dim(const std::vector<Monomial>& gens, std::size_t n) {
  if (n == 1) return BigInt(gens.front()[0]);
  if (n == 2) return count_zero_dim_2(gens);

  std::vector<const Monomial*> order;
  order.reserve(gens.size());
  for (const auto& g : gens) order.push_back(&g);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return (*a)[0] < (*b)[0]; });

  std::vector<std::uint64_t> cuts;
  for (auto* g : order) cuts.push_back((*g)[0]);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  BigInt total = 0;
  std::vector<Monomial> slice;
  std::size_t next = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    while (next < order.size() && (*order[next])[0] <= cuts[k]) {
      slice.push_back(drop_first(*order[next]));
      ++next;
    }
    const auto reduced = minimalize(slice, n - 1);
    total += BigInt(cuts[k + 1] - cuts[k]) * count_zero_dim(reduced.generators(), n - 1);
  }
  return total;
}

BigInt hilbert_rec(const std::vector<Monomial>& gens, std::size_t n, std::uint64_t t) {
  for (const auto& g : gens) {
    if (g.is_one()) return 0;
  }
  if (n == 0) return t == 0 ? 1 : 0;
  if (n == 1) {
    std::uint64_t m = kInf;
    for (const auto& g : gens) m = std::min(m, g[0]);
    return t < m ? 1 : 0;
  }
  BigInt total = 0;
  std::vector<Monomial> slice;
  for (std::uint64_t a = 0; a <= t; ++a) {
    slice.clear();
    for (const auto& g : gens) {
      if (g[0] <= a) slice.push_back(drop_first(g));
    }
    total += hilbert_rec(slice, n - 1, t - a);
  }
  return total;
}

struct ProductSearch {
  std::size_t n;
  std::uint64_t max_degree;
  std::uint64_t guard;
  std::uint64_t visited = 0;
  unsigned __int128 best = 0;

  static unsigned __int128 mul(unsigned __int128 a, std::uint64_t b) {
    unsigned __int128 r = 0;
    if (__builtin_mul_overflow(a, static_cast<unsigned __int128>(b), &r)) {
      throw OverflowError("staircase product exceeds 128 bits");
    }
    return r;
  }

  // active: generators dividing the prefix in coordinates < level.
  void run(std::size_t level, const std::vector<const Monomial*>& active, std::uint64_t sum,
           unsigned __int128 prod) {
    if (level + 1 == n) {
      std::uint64_t cmax = kInf;
      for (auto* g : active) cmax = std::min(cmax, (*g)[n - 1]);
      if (cmax == 0) return;
      const std::uint64_t b = std::min(cmax - 1, max_degree - sum);
      best = std::max(best, mul(prod, b + 1));
      return;
    }
    std::vector<const Monomial*> next;
    for (std::uint64_t a = 0; sum + a <= max_degree; ++a) {
      if (++visited > guard) throw GuardExceeded("max_staircase_product prefix guard exceeded");
      next.clear();
      bool member = false;
      for (auto* g : active) {
        if ((*g)[level] > a) continue;
        next.push_back(g);
        bool rest_zero = true;
        for (std::size_t i = level + 1; i < n; ++i) rest_zero = rest_zero && (*g)[i] == 0;
        member = member || rest_zero;
      }
      // (prefix, a, 0, ..., 0) in I: so is every larger a and every extension.
      if (member) break;
      run(level + 1, next, sum + a, mul(prod, a + 1));
    }
  }
};

}  // namespace

BigInt divisor_box_volume(const Monomial& m) {
  BigInt v = 1;
  for (auto e : m.exponents()) v *= BigInt(e) + 1;
  return v;
}

BigInt count_standard_monomials(const MonomialIdeal& ideal) {
  const std::size_t n = ideal.arity();
  if (n == 0) return 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t pure = std::uint64_t{1} << i;
    const bool has_pure = std::any_of(ideal.generators().begin(), ideal.generators().end(),
                                      [&](const Monomial& g) { return g.support_mask() == pure; });
    if (!has_pure) {
      throw NotZeroDimensional("variable x" + std::to_string(i) + " has no pure power in the ideal");
    }
  }
  return count_zero_dim(ideal.generators(), n);
}

BigInt hilbert_function(const MonomialIdeal& ideal, std::uint64_t t) {
  return hilbert_rec(ideal.generators(), ideal.arity(), t);
}

BandResult band_check(const MonomialIdeal& ideal, const BandSpec& band) {
  for (const auto& g : ideal.generators()) {
    const auto prod = divisor_box_volume(g).convert_to<long double>();
    if (!(static_cast<long double>(band.f) < prod && prod < static_cast<long double>(band.g))) {
      return {false, g};
    }
  }
  return {true, std::nullopt};
}

BigInt max_staircase_product(const MonomialIdeal& ideal, std::uint64_t max_degree,
                             std::uint64_t guard) {
  const std::size_t n = ideal.arity();
  if (n == 0) return ideal.is_zero() ? 1 : 0;
  ProductSearch search{n, max_degree, guard};
  std::vector<const Monomial*> active;
  for (const auto& g : ideal.generators()) active.push_back(&g);
  search.run(0, active, 0, 1);
  // best is a 128-bit value; rebuild it as a BigInt.
  BigInt out = static_cast<std::uint64_t>(search.best >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(search.best);
  return out;
}

bool tail_check(const MonomialIdeal& ideal, double h, std::uint64_t max_degree,
                std::uint64_t guard) {
  return max_staircase_product(ideal, max_degree, guard).convert_to<long double>() <=
         static_cast<long double>(h);
}

StaircaseCorners staircase_corners(const MonomialIdeal& ideal) {
  if (ideal.arity() != 2) throw WrongArity("staircase corners need exactly two variables");
  StaircaseCorners c;
  c.outer = ideal.generators();
  std::sort(c.outer.begin(), c.outer.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  for (std::size_t j = 0; j + 1 < c.outer.size(); ++j) {
    c.inner.push_back(Monomial{c.outer[j + 1][0], c.outer[j][1]});
  }
  return c;
}

}  // namespace rmi
