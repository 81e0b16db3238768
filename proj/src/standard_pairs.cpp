#include "rmi/standard_pairs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "rmi/errors.hpp"

namespace rmi {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

using GenList = std::vector<const Monomial*>;

GenList filter(const GenList& in, std::size_t coord, std::uint64_t bound) {
  GenList out;
  out.reserve(in.size());
  for (auto* g : in) {
    if ((*g)[coord] <= bound) out.push_back(g);
  }
  return out;
}

std::uint64_t min_coord(const GenList& gens, std::size_t coord) {
  std::uint64_t m = kInf;
  for (auto* g : gens) m = std::min(m, (*g)[coord]);
  return m;
}

// Counts (and optionally lists) the points a in Z^t, t >= 1, with
//   a not in J, and for every i: a with coordinate i dropped lies in J|_{T-i}.
// These are exactly the a for which (a, S) is a standard pair, J = I|_T.
//
// Membership of every such condition depends on a_j only through comparisons
// with generator exponents, so the first t-1 coordinates are scanned over the
// cells cut by the distinct generator exponents. Cells at or beyond the largest
// exponent M_j in a coordinate are skipped: there a extends freely in x_j. The
// last coordinate is solved as an interval [lo, c_max):
//   c_max  = min last exponent over generators dominated in the other coords,
//   tau_i  = min last exponent over generators dominated off {i, last},
//   lo     = max_i tau_i.
class CellScan {
 public:
  CellScan(const MonomialIdeal& J, std::uint64_t guard, std::size_t cap,
           std::vector<Monomial>* out, const Restriction* lift)
      : t_(J.arity()), gens_(J.generators()), guard_(guard), cap_(cap), out_(out), lift_(lift) {
    for (std::size_t j = 0; j + 1 < t_; ++j) {
      std::vector<std::uint64_t> c{0};
      for (const auto& g : gens_) c.push_back(g[j]);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      cuts_.push_back(std::move(c));
    }
    cell_.resize(t_ > 0 ? t_ - 1 : 0);
  }

  BigInt run() {
    GenList all;
    for (const auto& g : gens_) all.push_back(&g);
    if (t_ == 1) {
      const std::uint64_t cmax = min_coord(all, 0);
      if (cmax != kInf) emit(0, cmax);
      return total_;
    }
    descend(0, all, {});
    return total_;
  }

  bool truncated() const { return truncated_; }

 private:
  void descend(std::size_t j, const GenList& none, const std::vector<GenList>& fixed) {
    if (j + 2 == t_) {
      sweep(none, fixed);
      return;
    }
    const auto& cut = cuts_[j];
    for (std::size_t k = 0; k + 1 < cut.size(); ++k) {
      cell_[j] = {cut[k], cut[k + 1]};
      std::vector<GenList> next_fixed;
      next_fixed.reserve(fixed.size() + 1);
      for (const auto& f : fixed) next_fixed.push_back(filter(f, j, cut[k]));
      next_fixed.push_back(none);
      descend(j + 1, filter(none, j, cut[k]), next_fixed);
    }
  }

  // Last outer coordinate: every list only gains generators as the coordinate
  // grows, so the minima are running minima over lists sorted by it.
  void sweep(const GenList& none, const std::vector<GenList>& fixed) {
    const std::size_t j = t_ - 2;
    const std::size_t last = t_ - 1;
    const std::uint64_t tau_j = min_coord(none, last);

    std::vector<GenList> lists;
    lists.reserve(fixed.size() + 1);
    lists.push_back(none);
    for (const auto& f : fixed) lists.push_back(f);
    for (auto& l : lists) {
      std::sort(l.begin(), l.end(), [j](auto* a, auto* b) { return (*a)[j] < (*b)[j]; });
    }
    std::vector<std::size_t> ptr(lists.size(), 0);
    std::vector<std::uint64_t> run_min(lists.size(), kInf);

    const auto& cut = cuts_[j];
    for (std::size_t k = 0; k + 1 < cut.size(); ++k) {
      if (++visited_ > guard_) throw GuardExceeded("standard-pair cell guard exceeded");
      const std::uint64_t beta = cut[k];
      for (std::size_t l = 0; l < lists.size(); ++l) {
        while (ptr[l] < lists[l].size() && (*lists[l][ptr[l]])[j] <= beta) {
          run_min[l] = std::min(run_min[l], (*lists[l][ptr[l]])[last]);
          ++ptr[l];
        }
      }
      const std::uint64_t cmax = run_min[0];
      if (cmax == kInf) continue;
      std::uint64_t lo = tau_j;
      for (std::size_t l = 1; l < lists.size(); ++l) lo = std::max(lo, run_min[l]);
      if (lo >= cmax) continue;
      cell_[j] = {beta, cut[k + 1]};
      emit(lo, cmax);
    }
  }

  void emit(std::uint64_t lo, std::uint64_t hi) {
    BigInt weight = hi - lo;
    for (const auto& [a, b] : cell_) weight *= b - a;
    total_ += weight;
    if (!out_ || truncated_) return;

    // Odometer over the cell box times [lo, hi).
    const std::size_t outer = cell_.size();
    Monomial local(t_);
    for (std::size_t i = 0; i < outer; ++i) local.set(i, cell_[i].first);
    local.set(t_ - 1, lo);
    while (true) {
      if (out_->size() >= cap_) {
        truncated_ = true;
        return;
      }
      out_->push_back(lift_->lift(local));
      std::size_t i = t_;
      while (i-- > 0) {
        const std::uint64_t end = i + 1 == t_ ? hi : cell_[i].second;
        const std::uint64_t begin = i + 1 == t_ ? lo : cell_[i].first;
        if (local[i] + 1 < end) {
          local.set(i, local[i] + 1);
          break;
        }
        local.set(i, begin);
      }
      if (i == static_cast<std::size_t>(-1)) return;
    }
  }

  std::size_t t_;
  const std::vector<Monomial>& gens_;
  std::uint64_t guard_;
  std::size_t cap_;
  std::vector<Monomial>* out_;
  const Restriction* lift_;
  std::vector<std::vector<std::uint64_t>> cuts_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> cell_;
  std::uint64_t visited_ = 0;
  BigInt total_ = 0;
  bool truncated_ = false;
};

void check_pair_arity(const MonomialIdeal& ideal, const Monomial& alpha, const VariableSet& s) {
  if (alpha.arity() != ideal.arity() || s.arity() != ideal.arity()) {
    throw DimensionMismatch("pair arity differs from the ideal");
  }
}

void finish_census(PairCensus& c, const MonomialIdeal& ideal) {
  c.adeg = 0;
  for (const auto& v : c.counts_by_free_size) c.adeg += v;
  c.dim = krull_dimension(ideal);
  c.deg = c.counts_by_free_size[c.dim];
  std::sort(c.pairs.begin(), c.pairs.end(), pair_less);
}

}  // namespace

bool pair_less(const StandardPair& a, const StandardPair& b) {
  if (a.free_set.size() != b.free_set.size()) return a.free_set.size() < b.free_set.size();
  if (a.free_set.mask() != b.free_set.mask()) return a.free_set.mask() < b.free_set.mask();
  return grlex_compare(a.alpha, b.alpha) < 0;
}

bool is_admissible(const MonomialIdeal& ideal, const Monomial& alpha, const VariableSet& free_set) {
  check_pair_arity(ideal, alpha, free_set);
  if ((alpha.support_mask() & free_set.mask()) != 0) return false;
  const VariableSet bounded = free_set.complement();
  const Restriction r = restrict(ideal, bounded);
  if (r.is_unit()) return false;
  return !contains(r.ideal(), project(alpha, bounded));
}

bool is_standard(const MonomialIdeal& ideal, const Monomial& alpha, const VariableSet& free_set) {
  if (!is_admissible(ideal, alpha, free_set)) return false;
  for (std::size_t i = 0; i < ideal.arity(); ++i) {
    if (free_set.contains(i)) continue;
    Monomial shorter = alpha;
    shorter.set(i, 0);
    if (is_admissible(ideal, shorter, free_set.with(i))) return false;
  }
  return true;
}

PairCensus enumerate_standard_pairs(const MonomialIdeal& ideal, const CensusOptions& opts) {
  const std::size_t n = ideal.arity();
  if (n > 30) throw GuardExceeded("standard pairs limited to 30 variables");
  PairCensus c;
  c.n = n;
  c.counts_by_free_size.assign(n + 1, 0);

  std::vector<Monomial> points;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    const VariableSet free_set(n, s);
    const VariableSet bounded = free_set.complement();
    const Restriction r = restrict(ideal, bounded);
    if (r.is_unit()) continue;

    BigInt count = 0;
    points.clear();
    if (bounded.size() == 0) {
      // Only the zero ideal gets here: (1, [n]) is its single pair.
      count = 1;
      points.emplace_back(n);
    } else {
      const std::size_t room =
          opts.collect_pairs && !c.truncated ? opts.pair_cap - c.pairs.size() : 0;
      CellScan scan(r.ideal(), opts.guard, room, opts.collect_pairs ? &points : nullptr, &r);
      count = scan.run();
      c.truncated = c.truncated || scan.truncated();
    }
    if (count == 0) continue;
    c.counts_by_free_set[s] = count;
    c.counts_by_free_size[free_set.size()] += count;
    if (opts.collect_pairs) {
      for (auto& p : points) {
        if (c.pairs.size() >= opts.pair_cap) {
          c.truncated = true;
          break;
        }
        c.pairs.push_back({std::move(p), free_set});
      }
    }
  }
  finish_census(c, ideal);
  return c;
}

PairCensus brute_force_standard_pairs(const MonomialIdeal& ideal, std::uint64_t box_bound,
                                      std::uint64_t guard) {
  const std::size_t n = ideal.arity();
  if (n > 4) throw GuardExceeded("brute-force standard pairs limited to n <= 4");
  const double volume = std::pow(static_cast<double>(box_bound) + 1, static_cast<double>(n)) *
                         static_cast<double>(std::uint64_t{1} << n);
  if (volume > static_cast<double>(guard)) throw GuardExceeded("brute-force box exceeds guard");

  std::uint64_t max_exp = 0;
  for (const auto& g : ideal.generators()) {
    for (auto e : g.exponents()) max_exp = std::max(max_exp, e);
  }

  // x^a * K[S] avoids I iff it avoids I for every S-exponent up to max_exp:
  // capping the S-part at a generator's exponents preserves divisibility.
  auto admissible_direct = [&](const Monomial& alpha, const VariableSet& s) {
    const auto free_idx = s.indices();
    Monomial probe = alpha;
    while (true) {
      if (contains(ideal, probe)) return false;
      std::size_t i = free_idx.size();
      while (i-- > 0) {
        if (probe[free_idx[i]] < max_exp) {
          probe.set(free_idx[i], probe[free_idx[i]] + 1);
          break;
        }
        probe.set(free_idx[i], 0);
      }
      if (i == static_cast<std::size_t>(-1)) return true;
    }
  };

  const std::uint64_t limit = std::uint64_t{1} << n;
  std::vector<std::vector<Monomial>> admissible(limit);
  for (std::uint64_t s = 0; s < limit; ++s) {
    const VariableSet free_set(n, s);
    const auto bounded = free_set.complement().indices();
    Monomial alpha(n);
    while (true) {
      if (admissible_direct(alpha, free_set)) admissible[s].push_back(alpha);
      std::size_t i = bounded.size();
      while (i-- > 0) {
        if (alpha[bounded[i]] < box_bound) {
          alpha.set(bounded[i], alpha[bounded[i]] + 1);
          break;
        }
        alpha.set(bounded[i], 0);
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }

  // (a, S) <= (b, T) iff a | b and supp(b - a) | T inside S.
  auto precedes = [](const Monomial& a, std::uint64_t s, const Monomial& b, std::uint64_t t) {
    if (!divides(a, b)) return false;
    std::uint64_t diff = t;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (b[i] != a[i]) diff |= std::uint64_t{1} << i;
    }
    return (diff & ~s) == 0;
  };

  PairCensus c;
  c.n = n;
  c.counts_by_free_size.assign(n + 1, 0);
  for (std::uint64_t t = 0; t < limit; ++t) {
    for (const auto& beta : admissible[t]) {
      bool minimal = true;
      // Pairs with the same free set are never comparable unless equal, since
      // both exponent vectors vanish on it; only strict supersets can sit below.
      for (std::uint64_t s = 0; s < limit && minimal; ++s) {
        if (s == t || (t & ~s) != 0) continue;
        for (const auto& a : admissible[s]) {
          if (precedes(a, s, beta, t)) {
            minimal = false;
            break;
          }
        }
      }
      if (!minimal) continue;
      const VariableSet free_set(n, t);
      c.pairs.push_back({beta, free_set});
      c.counts_by_free_size[free_set.size()] += 1;
      c.counts_by_free_set[t] += 1;
    }
  }
  finish_census(c, ideal);
  return c;
}

BigInt degree_by_restrictions(const MonomialIdeal& ideal, std::size_t dim) {
  const std::size_t n = ideal.arity();
  if (dim > n) throw PreconditionError("dimension exceeds the number of variables");
  BigInt total = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) != n - dim) continue;
    const Restriction r = restrict(ideal, VariableSet(n, m));
    if (r.is_unit()) continue;
    total += count_standard_monomials(r.ideal());
  }
  return total;
}

BigInt degree(const MonomialIdeal& ideal, const CensusOptions& opts) {
  CensusOptions o = opts;
  o.collect_pairs = false;
  const auto census = enumerate_standard_pairs(ideal, o);
  const BigInt alt = degree_by_restrictions(ideal, census.dim);
  if (alt != census.deg) {
    throw InternalError("degree mismatch: pairs give " + census.deg.str() + ", restrictions give " +
                        alt.str());
  }
  return census.deg;
}

BigInt arithmetic_degree(const MonomialIdeal& ideal, const CensusOptions& opts) {
  CensusOptions o = opts;
  o.collect_pairs = false;
  return enumerate_standard_pairs(ideal, o).adeg;
}

BigInt hilbert_sum(const PairCensus& census, std::uint64_t t) {
  if (census.truncated) throw PreconditionError("hilbert_sum needs an untruncated pair list");
  BigInt total = 0;
  for (const auto& pr : census.pairs) {
    const std::uint64_t s = pr.free_set.size();
    const std::uint64_t a = pr.alpha.total_degree();
    if (s == 0) {
      if (t == a) total += 1;
      continue;
    }
    if (t < a) continue;
    total += binomial(t - a + s - 1, s - 1);
  }
  return total;
}

namespace {

long double ipow(long double base, std::size_t e) {
  long double r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

// Smallest v >= 1 with v^(t-1) > h, or 0 if none exists (t = 1, h >= 1).
std::uint64_t min_coordinate_value(double h, std::size_t t) {
  const auto hl = static_cast<long double>(h);
  if (t == 1) return 1 > hl ? 1 : 0;
  if (hl < 1) return 1;
  auto v = static_cast<std::uint64_t>(std::floor(std::pow(hl, 1.0L / static_cast<long double>(t - 1))));
  v = std::max<std::uint64_t>(v, 1);
  while (v > 1 && ipow(static_cast<long double>(v - 1), t - 1) > hl) --v;
  while (!(ipow(static_cast<long double>(v), t - 1) > hl)) ++v;
  return v;
}

template <class Visit>
void walk_region(long double f, std::uint64_t vmin, std::size_t t, Visit&& visit) {
  std::vector<std::uint64_t> values(t, 0);
  // Enumerates coordinate values v_i = a_i + 1 >= vmin with product < f.
  auto rec = [&](auto&& self, std::size_t i, long double prod) -> void {
    const long double rest = ipow(static_cast<long double>(vmin), t - i - 1);
    for (std::uint64_t v = vmin; prod * static_cast<long double>(v) * rest < f; ++v) {
      values[i] = v;
      if (i + 1 == t) {
        visit(values);
      } else {
        self(self, i + 1, prod * static_cast<long double>(v));
      }
    }
  };
  rec(rec, 0, 1.0L);
}

}  // namespace

std::vector<Monomial> region_L(double f, double h, const VariableSet& vars) {
  const std::size_t t = vars.size();
  if (t < 1) throw PreconditionError("region_L needs at least one coordinate");
  std::vector<Monomial> out;
  const std::uint64_t vmin = min_coordinate_value(h, t);
  if (vmin == 0) return out;
  walk_region(static_cast<long double>(f), vmin, t, [&](const std::vector<std::uint64_t>& v) {
    Monomial m(t);
    for (std::size_t i = 0; i < t; ++i) m.set(i, v[i] - 1);
    out.push_back(std::move(m));
  });
  return out;
}

BigInt region_L_size(double f, double h, std::size_t t) {
  if (t < 1) throw PreconditionError("region_L needs at least one coordinate");
  const std::uint64_t vmin = min_coordinate_value(h, t);
  if (vmin == 0) return 0;
  const auto fl = static_cast<long double>(f);
  if (t == 1) {
    // v in [vmin, f).
    auto vmax = static_cast<std::uint64_t>(std::ceil(fl)) - 1;
    if (fl <= 1) return 0;
    return vmax >= vmin ? BigInt(vmax - vmin + 1) : BigInt(0);
  }
  // Enumerate the first t-1 coordinates, count the last one in closed form.
  BigInt total = 0;
  walk_region(fl / static_cast<long double>(vmin), vmin, t - 1,
              [&](const std::vector<std::uint64_t>& v) {
                long double prod = 1;
                for (auto x : v) prod *= static_cast<long double>(x);
                auto vmax = static_cast<std::uint64_t>(std::floor(fl / prod));
                while (vmax > 0 && !(prod * static_cast<long double>(vmax) < fl)) --vmax;
                if (vmax >= vmin) total += vmax - vmin + 1;
              });
  return total;
}

}  // namespace rmi
