#include "rmi/ideal.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

#include "rmi/bigint.hpp"
#include "rmi/errors.hpp"

namespace rmi {

namespace {

void check_arity(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionMismatch("arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

std::uint64_t low_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

}  // namespace

Monomial::Monomial(std::size_t n) : exps_(n, 0) {
  if (n > kMaxVariables) throw PreconditionError("too many variables");
}

Monomial::Monomial(std::span<const std::uint64_t> exponents)
    : exps_(exponents.begin(), exponents.end()) {
  if (exps_.size() > kMaxVariables) throw PreconditionError("too many variables");
}

Monomial::Monomial(std::initializer_list<std::uint64_t> exponents)
    : exps_(exponents.begin(), exponents.end()) {
  if (exps_.size() > kMaxVariables) throw PreconditionError("too many variables");
}

std::uint64_t Monomial::total_degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d = checked_add(d, e);
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

std::uint64_t Monomial::support_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) os << ',';
    os << exps_[i];
  }
  os << ')';
  return os.str();
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  check_arity(a.arity(), b.arity());
  if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

VariableSet::VariableSet(std::size_t n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (n > kMaxVariables) throw PreconditionError("too many variables");
  if ((mask & ~low_mask(n)) != 0) throw PreconditionError("variable index out of range");
}

VariableSet VariableSet::all(std::size_t n) { return {n, low_mask(n)}; }

VariableSet VariableSet::of(std::size_t n, std::initializer_list<std::size_t> indices) {
  return of(n, std::span<const std::size_t>(indices.begin(), indices.size()));
}

VariableSet VariableSet::of(std::size_t n, std::span<const std::size_t> indices) {
  std::uint64_t mask = 0;
  for (auto i : indices) {
    if (i >= n) throw PreconditionError("variable index out of range");
    mask |= std::uint64_t{1} << i;
  }
  return {n, mask};
}

std::size_t VariableSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

bool VariableSet::is_subset_of(const VariableSet& other) const {
  check_arity(n_, other.n_);
  return (mask_ & ~other.mask_) == 0;
}

VariableSet VariableSet::complement() const { return {n_, ~mask_ & low_mask(n_)}; }

VariableSet VariableSet::with(std::size_t i) const {
  if (i >= n_) throw PreconditionError("variable index out of range");
  return {n_, mask_ | (std::uint64_t{1} << i)};
}

VariableSet VariableSet::without(std::size_t i) const {
  if (i >= n_) throw PreconditionError("variable index out of range");
  return {n_, mask_ & ~(std::uint64_t{1} << i)};
}

std::vector<std::size_t> VariableSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

bool divides(const Monomial& a, const Monomial& b) {
  check_arity(a.arity(), b.arity());
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

MonomialIdeal MonomialIdeal::zero(std::size_t n) {
  if (n > kMaxVariables) throw PreconditionError("too many variables");
  return {n, {}};
}

MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t n) {
  if (n > kMaxVariables) throw PreconditionError("too many variables");
  for (const auto& g : gens) {
    check_arity(g.arity(), n);
    if (g.total_degree() == 0) throw UnitIdealError("degree-0 generator generates the unit ideal");
  }
  if (gens.empty()) return MonomialIdeal(n, {});

  std::vector<Monomial> kept;
  if (n == 1) {
    kept.push_back(*std::min_element(gens.begin(), gens.end(),
                                     [](const auto& a, const auto& b) { return a[0] < b[0]; }));
  } else if (n == 2) {
    // Staircase sweep: by x ascending, a monomial survives iff its y exponent
    // drops below every y seen so far.
    std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) {
      return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    std::uint64_t min_y = std::numeric_limits<std::uint64_t>::max();
    for (auto& g : gens) {
      if (g[1] < min_y) {
        min_y = g[1];
        kept.push_back(std::move(g));
      }
    }
  } else {
    // A proper divisor has strictly smaller degree, so scanning in grlex order
    // only ever needs to test against generators already kept.
    std::sort(gens.begin(), gens.end(), GrlexLess{});
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (auto& g : gens) {
      const bool redundant =
          std::any_of(kept.begin(), kept.end(), [&](const Monomial& k) { return divides(k, g); });
      if (!redundant) kept.push_back(std::move(g));
    }
  }
  std::sort(kept.begin(), kept.end(), GrlexLess{});
  return MonomialIdeal(n, std::move(kept));
}

bool contains(const MonomialIdeal& ideal, const Monomial& m) {
  check_arity(ideal.arity(), m.arity());
  return std::any_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const Monomial& g) { return divides(g, m); });
}

Restriction::Restriction(VariableSet vars, MonomialIdeal ideal)
    : vars_(vars), ideal_(std::move(ideal)), unit_(false) {
  check_arity(vars_.size(), ideal_.arity());
}

Restriction Restriction::unit(VariableSet vars) {
  Restriction r;
  r.vars_ = vars;
  r.ideal_ = MonomialIdeal::zero(vars.size());
  r.unit_ = true;
  return r;
}

const MonomialIdeal& Restriction::ideal() const {
  if (unit_) throw UnitIdealError("restriction is the unit ideal");
  return ideal_;
}

Monomial Restriction::lift(const Monomial& local) const {
  check_arity(local.arity(), vars_.size());
  Monomial out(vars_.arity());
  const auto idx = vars_.indices();
  for (std::size_t j = 0; j < idx.size(); ++j) out.set(idx[j], local[j]);
  return out;
}

Monomial project(const Monomial& m, const VariableSet& vars) {
  check_arity(m.arity(), vars.arity());
  Monomial out(vars.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (vars.contains(i)) out.set(j++, m[i]);
  }
  return out;
}

Restriction restrict(const MonomialIdeal& ideal, const VariableSet& vars) {
  check_arity(ideal.arity(), vars.arity());
  std::vector<Monomial> projected;
  projected.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) {
    if ((g.support_mask() & vars.mask()) == 0) return Restriction::unit(vars);
    projected.push_back(project(g, vars));
  }
  return Restriction(vars, minimalize(std::move(projected), vars.size()));
}

std::size_t krull_dimension(const MonomialIdeal& ideal) {
  const std::size_t n = ideal.arity();
  if (n > 30) throw GuardExceeded("krull_dimension brute force limited to 30 variables");
  std::vector<std::uint64_t> supports;
  supports.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) supports.push_back(g.support_mask());
  std::size_t best = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (size <= best && s != 0) continue;
    const bool independent = std::none_of(supports.begin(), supports.end(),
                                          [s](std::uint64_t g) { return (g & ~s) == 0; });
    if (independent) best = std::max(best, size);
  }
  return best;
}

std::size_t krull_dimension(const Restriction& r) {
  if (r.is_unit()) throw UnitIdealError("krull_dimension of the unit ideal");
  return krull_dimension(r.ideal());
}

}  // namespace rmi
