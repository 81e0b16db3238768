#include "rmi/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "rmi/errors.hpp"
#include "rmi/philox.hpp"

namespace rmi {

double resolve_p(const PSpec& spec, std::uint64_t max_degree) {
  const auto D = static_cast<double>(max_degree);
  struct Visitor {
    double D;
    double operator()(const ExplicitP& e) const { return e.p; }
    double operator()(const PowerK& e) const { return std::pow(D, -e.k); }
    double operator()(const ScaledPower& e) const { return e.c * std::pow(D, -e.t); }
    double operator()(const RationalP& e) const {
      return static_cast<double>(e.num) / static_cast<double>(e.den);
    }
  };
  return std::visit(Visitor{D}, spec);
}

std::string describe(const PSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  struct Visitor {
    std::ostringstream& os;
    void operator()(const ExplicitP& e) const { os << "p=" << e.p; }
    void operator()(const PowerK& e) const { os << "p=D^-" << e.k; }
    void operator()(const ScaledPower& e) const { os << "p=" << e.c << "*D^-" << e.t; }
    void operator()(const RationalP& e) const { os << "p=" << e.num << "/" << e.den; }
  };
  std::visit(Visitor{os}, spec);
  return os.str();
}

void ModelParams::validate() const {
  if (n < 1 || n > kMaxVariables) throw PreconditionError("n must be in [1, 64]");
  if (max_degree < 1) throw PreconditionError("max degree must be >= 1");
  if (max_degree >= (std::uint64_t{1} << 32)) throw PreconditionError("max degree must be < 2^32");
  if (const auto* r = std::get_if<RationalP>(&p_spec); r && (r->den == 0 || r->num >= r->den)) {
    throw PreconditionError("rational p must satisfy 0 < num < den");
  }
  const double pv = p();
  if (!(pv > 0.0 && pv < 1.0)) throw PreconditionError("p must lie in (0, 1), got " + std::to_string(pv));
}

BigInt count_monomials_exact_degree(std::size_t n, std::uint64_t d) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  return binomial(n - 1 + d, n - 1);
}

BigInt count_monomials_up_to(std::size_t n, std::uint64_t max_degree) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  return binomial(n + max_degree, n) - 1;
}

Monomial unrank_monomial(std::size_t n, std::uint64_t d, const BigInt& index) {
  if (index < 0 || index >= count_monomials_exact_degree(n, d)) {
    throw PreconditionError("monomial rank out of range");
  }
  Monomial m(n);
  BigInt idx = index;
  std::uint64_t r = d;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t k = n - i - 1;
    for (std::uint64_t a = 0; a <= r; ++a) {
      const BigInt cnt = binomial(k - 1 + (r - a), k - 1);
      if (idx < cnt) {
        m.set(i, a);
        r -= a;
        break;
      }
      idx -= cnt;
    }
  }
  m.set(n - 1, r);
  return m;
}

namespace {

// Degree-r completions in k+1 variables whose first exponent is below a:
// C(k+r, k) - C(k+r-a, k).
std::uint64_t prefix_count(std::size_t k, std::uint64_t r, std::uint64_t a) {
  const auto total = binomial_u64(k + r, k);
  const auto rest = binomial_u64(k + r - a, k);
  if (!total || !rest) throw OverflowError("monomial rank exceeds 64 bits");
  return *total - *rest;
}

}  // namespace

Monomial unrank_monomial_u64(std::size_t n, std::uint64_t d, std::uint64_t index) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const auto count = binomial_u64(n - 1 + d, n - 1);
  if (!count) throw OverflowError("monomial count exceeds 64 bits");
  if (index >= *count) throw PreconditionError("monomial rank out of range");
  Monomial m(n);
  std::uint64_t r = d;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t k = n - i - 1;
    // Largest a in [0, r] with prefix_count(a) <= index.
    std::uint64_t lo = 0;
    std::uint64_t hi = r;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (prefix_count(k, r, mid) <= index) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    index -= prefix_count(k, r, lo);
    m.set(i, lo);
    r -= lo;
  }
  m.set(n - 1, r);
  return m;
}

BigInt rank_monomial(const Monomial& m) {
  const std::size_t n = m.arity();
  if (n < 1) throw PreconditionError("n must be >= 1");
  BigInt rank = 0;
  std::uint64_t r = m.total_degree();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t k = n - i - 1;
    const std::uint64_t a = m[i];
    rank += binomial(k + r, k) - binomial(k + r - a, k);
    r -= a;
  }
  return rank;
}

namespace {

// Emits the selected monomials of each degree in ascending rank order, which
// within a degree is grlex order.
template <class Sink>
void draw(const ModelParams& params, std::uint64_t trial, Sink&& sink) {
  params.validate();
  const double p = params.p();
  std::vector<std::uint64_t> picks;
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t d = 1; d <= params.max_degree; ++d) {
    const auto count = binomial_u64(params.n - 1 + d, params.n - 1);
    if (!count || *count > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw GuardExceeded("per-degree monomial count exceeds 2^63");
    }
    const std::uint64_t N = *count;
    PhiloxStream rng(params.seed, trial, static_cast<std::uint32_t>(d));
    boost::random::binomial_distribution<std::int64_t, double> binom(static_cast<std::int64_t>(N), p);
    const auto K = static_cast<std::uint64_t>(binom(rng));
    if (K == 0) continue;

    // Floyd: exactly K uniform draws give a uniform K-subset of [0, N).
    picks.clear();
    seen.clear();
    seen.reserve(2 * K);
    for (std::uint64_t j = N - K; j < N; ++j) {
      boost::random::uniform_int_distribution<std::uint64_t> uni(0, j);
      const std::uint64_t t = uni(rng);
      const std::uint64_t pick = seen.insert(t).second ? t : j;
      if (pick == j) seen.insert(j);
      picks.push_back(pick);
    }
    std::sort(picks.begin(), picks.end());
    for (auto idx : picks) sink(unrank_monomial_u64(params.n, d, idx));
  }
}

}  // namespace

std::vector<Monomial> sample_raw(const ModelParams& params, std::uint64_t trial) {
  std::vector<Monomial> out;
  draw(params, trial, [&](Monomial m) { out.push_back(std::move(m)); });
  return out;
}

SampledIdeal sample_ideal(const ModelParams& params, std::uint64_t trial) {
  auto raw = sample_raw(params, trial);
  SampledIdeal s;
  s.raw_count = raw.size();
  s.ideal = minimalize(std::move(raw), params.n);
  return s;
}

namespace {

long double divisor_box(const Monomial& alpha) {
  long double prod = 1;
  for (auto e : alpha.exponents()) prod *= static_cast<long double>(e) + 1;
  return prod;
}

void check_alpha(const ModelParams& params, const Monomial& alpha) {
  params.validate();
  if (alpha.arity() != params.n) throw DimensionMismatch("monomial arity differs from n");
  const auto deg = alpha.total_degree();
  if (deg < 1 || deg > params.max_degree) throw PreconditionError("need 1 <= |alpha| <= D");
}

}  // namespace

double prob_not_in_ideal(const ModelParams& params, const Monomial& alpha) {
  check_alpha(params, alpha);
  const long double exponent = divisor_box(alpha) - 1;
  return static_cast<double>(std::exp(exponent * std::log1p(-static_cast<long double>(params.p()))));
}

double prob_minimal_generator(const ModelParams& params, const Monomial& alpha) {
  check_alpha(params, alpha);
  const long double exponent = divisor_box(alpha) - 2;
  const auto p = static_cast<long double>(params.p());
  return static_cast<double>(p * std::exp(exponent * std::log1p(-p)));
}

Thresholds default_thresholds(double k, double s, double eps, std::uint64_t max_degree) {
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  if (max_degree < 1) throw PreconditionError("max degree must be >= 1");
  const auto D = static_cast<double>(max_degree);
  const double f = std::pow(D, k - s - eps);
  const double g = std::pow(D, k - s + eps);
  return {f, g, g};
}

}  // namespace rmi
