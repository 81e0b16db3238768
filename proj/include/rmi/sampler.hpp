#pragma once

// The random monomial ideal model I(n, D, p): every monomial of positive
// degree at most D is selected independently with probability p, and the
// selected set generates the ideal.
//
// Sampling draws, for each degree d, a Binomial(#monomials of degree d, p)
// count and then that many distinct degree-d monomials uniformly without
// replacement (Floyd's algorithm over unranked indices). The random stream for
// degree d of trial t is the Philox stream keyed by (seed, t, d), so a sample
// depends only on (params, trial).

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmi/bigint.hpp"
#include "rmi/ideal.hpp"

namespace rmi {

struct ExplicitP {
  double p;
};
// p = D^(-k)
struct PowerK {
  double k;
};
// p = c * D^(-t)
struct ScaledPower {
  double c;
  double t;
};
// p = num / den, kept exact for reporting.
struct RationalP {
  std::uint64_t num;
  std::uint64_t den;
};
using PSpec = std::variant<ExplicitP, PowerK, ScaledPower, RationalP>;

double resolve_p(const PSpec& spec, std::uint64_t max_degree);
std::string describe(const PSpec& spec);

// p is stored as a double; q = 1 - p is computed from it.
struct ModelParams {
  std::size_t n = 1;
  std::uint64_t max_degree = 1;
  PSpec p_spec = ExplicitP{0.5};
  std::uint64_t seed = 0;

  double p() const { return resolve_p(p_spec, max_degree); }
  double q() const { return 1.0 - p(); }

  // Throws PreconditionError unless n >= 1, D >= 1 and 0 < p < 1.
  void validate() const;
};

// Monomials of total degree exactly d in n variables: C(n+d-1, n-1).
BigInt count_monomials_exact_degree(std::size_t n, std::uint64_t d);
// Monomials of positive degree at most D: C(n+D, n) - 1.
BigInt count_monomials_up_to(std::size_t n, std::uint64_t max_degree);

// Degree-d monomials are ordered ascending-lex on exponent vectors:
// (0,..,0,d) has rank 0 and (d,0,..,0) the last rank.
Monomial unrank_monomial(std::size_t n, std::uint64_t d, const BigInt& index);
BigInt rank_monomial(const Monomial& m);
// Fast path when the degree-d count fits in 64 bits.
Monomial unrank_monomial_u64(std::size_t n, std::uint64_t d, std::uint64_t index);

// The raw selected monomial set of one trial, sorted in grlex order.
std::vector<Monomial> sample_raw(const ModelParams& params, std::uint64_t trial);

struct SampledIdeal {
  MonomialIdeal ideal;
  std::uint64_t raw_count = 0;
};

SampledIdeal sample_ideal(const ModelParams& params, std::uint64_t trial);

// P(x^a not in I) = q^(prod(a_i+1) - 1).
double prob_not_in_ideal(const ModelParams& params, const Monomial& alpha);
// P(x^a in G(I)) = p * q^(prod(a_i+1) - 2): selected, with none of its
// positive-degree proper divisors selected.
double prob_minimal_generator(const ModelParams& params, const Monomial& alpha);

struct Thresholds {
  double f;
  double g;
  double h;
};

// f_s = D^(k-s-eps), g_s = h_s = D^(k-s+eps) for p = D^(-k).
Thresholds default_thresholds(double k, double s, double eps, std::uint64_t max_degree);

}  // namespace rmi
