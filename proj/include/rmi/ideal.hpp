#pragma once

// Exact monomial and monomial-ideal arithmetic.
//
// A monomial x^a is stored as its exponent vector. Ideals are always held in
// canonical form: the minimal generating set, sorted ascending in graded
// lexicographic order (total degree first, ties broken by comparing exponents
// left to right, larger exponent of x_0 ranking higher). Two ideals are equal
// iff their canonical generator lists are equal.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rmi {

// Variable subsets are bitmasks, which caps the number of variables.
inline constexpr std::size_t kMaxVariables = 64;

class Monomial {
 public:
  using Exponents = boost::container::small_vector<std::uint64_t, 4>;

  Monomial() = default;
  // The monomial 1 in n variables.
  explicit Monomial(std::size_t n);
  explicit Monomial(std::span<const std::uint64_t> exponents);
  Monomial(std::initializer_list<std::uint64_t> exponents);

  std::size_t arity() const { return exps_.size(); }
  std::uint64_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint64_t> exponents() const { return {exps_.data(), exps_.size()}; }

  void set(std::size_t i, std::uint64_t e) { exps_[i] = e; }

  // |a|; throws OverflowError.
  std::uint64_t total_degree() const;
  bool is_one() const;
  // Bit i set iff x_i divides the monomial.
  std::uint64_t support_mask() const;

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  Exponents exps_;
};

// Graded lexicographic comparison; arities must agree.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) < 0; }
};

class VariableSet {
 public:
  VariableSet() = default;
  VariableSet(std::size_t n, std::uint64_t mask);

  static VariableSet empty(std::size_t n) { return {n, 0}; }
  static VariableSet all(std::size_t n);
  static VariableSet of(std::size_t n, std::initializer_list<std::size_t> indices);
  static VariableSet of(std::size_t n, std::span<const std::size_t> indices);

  std::size_t arity() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  std::size_t size() const;
  bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  bool is_subset_of(const VariableSet& other) const;
  VariableSet complement() const;
  VariableSet with(std::size_t i) const;
  VariableSet without(std::size_t i) const;
  // Ascending.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::size_t n_ = 0;
  std::uint64_t mask_ = 0;
};

// true iff a_i <= b_i for all i. Throws DimensionMismatch.
bool divides(const Monomial& a, const Monomial& b);

class MonomialIdeal {
 public:
  MonomialIdeal() = default;

  static MonomialIdeal zero(std::size_t n);

  std::size_t arity() const { return n_; }
  const std::vector<Monomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  friend MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t n);
  MonomialIdeal(std::size_t n, std::vector<Monomial> gens) : n_(n), gens_(std::move(gens)) {}

  std::size_t n_ = 0;
  std::vector<Monomial> gens_;
};

// Canonical minimal generating set of the ideal generated by gens.
// Throws UnitIdealError on a degree-0 input and DimensionMismatch on arity errors.
MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t n);

bool contains(const MonomialIdeal& ideal, const Monomial& m);

// Image of an ideal under x_i -> 1 for i outside `vars`. The result lives in
// |vars| variables, renumbered 0..|vars|-1 in ascending original order. It is
// the unit ideal exactly when some generator is supported outside `vars`.
class Restriction {
 public:
  Restriction(VariableSet vars, MonomialIdeal ideal);
  static Restriction unit(VariableSet vars);

  bool is_unit() const { return unit_; }
  // Throws UnitIdealError for the unit ideal.
  const MonomialIdeal& ideal() const;
  // The restricted-to set, in original coordinates.
  const VariableSet& variables() const { return vars_; }
  // Original index of each local variable.
  std::vector<std::size_t> original_indices() const { return vars_.indices(); }

  // Lifts a local exponent vector back to original coordinates (zero off vars).
  Monomial lift(const Monomial& local) const;

  friend bool operator==(const Restriction&, const Restriction&) = default;

 private:
  Restriction() = default;
  VariableSet vars_;
  MonomialIdeal ideal_;
  bool unit_ = false;
};

Restriction restrict(const MonomialIdeal& ideal, const VariableSet& vars);

// The coordinates of m indexed by vars, in ascending order.
Monomial project(const Monomial& m, const VariableSet& vars);

// max |S| over subsets S with no generator supported inside S. Brute force over
// all 2^n subsets.
std::size_t krull_dimension(const MonomialIdeal& ideal);
// Throws UnitIdealError on the unit ideal.
std::size_t krull_dimension(const Restriction& r);

}  // namespace rmi
