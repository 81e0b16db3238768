#include "doctest.h"

#include <cmath>

#include "rmi/divisor_count.hpp"
#include "rmi/errors.hpp"

using namespace rmi;

namespace {

// Z(n, d) by the ungrouped sum over a = 1..d.
BigInt naive(std::size_t n, std::uint64_t d) {
  if (d == 0) return 0;
  if (n == 1) return d;
  BigInt total = 0;
  for (std::uint64_t a = 1; a <= d; ++a) total += z_count(n - 1, d / a);
  return total;
}

}  // namespace

TEST_CASE("z_count examples") {
  CHECK(z_count(1, 7.5) == 7);
  CHECK(z_count(2, std::uint64_t{4}) == 8);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(z_count(n, std::uint64_t{1}) == 1);
  CHECK(z_count(3, std::uint64_t{0}) == 0);
  CHECK(z_count(3, 0.5) == 0);
  CHECK(z_count_bruteforce(2, 4) == 8);
  CHECK(z_count_bruteforce(3, 2) == 4);
  CHECK_THROWS_AS(z_count(0, std::uint64_t{5}), PreconditionError);
  CHECK_THROWS_AS(z_count(2, -1.0), PreconditionError);
  CHECK_THROWS_AS(z_count_bruteforce(3, 10000, 10), GuardExceeded);
}

TEST_CASE("z_count agrees with enumeration") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t d = 0; d <= 200; ++d) CHECK(z_count(n, d) == z_count_bruteforce(n, d));
  }
}

TEST_CASE("grouped blocks equal the plain sum") {
  for (std::size_t n = 2; n <= 3; ++n) {
    for (std::uint64_t d = 1; d <= 10000; d = d * 3 + 1) CHECK(z_count(n, d) == naive(n, d));
  }
}

TEST_CASE("monotone and floor-invariant") {
  for (std::size_t n = 1; n <= 4; ++n) {
    BigInt prev = 0;
    for (std::uint64_t d = 1; d <= 300; ++d) {
      const auto z = z_count(n, d);
      CHECK(z >= prev);
      if (n > 1) CHECK(z >= z_count(n - 1, d));
      CHECK(z_count(n, static_cast<double>(d) + 0.7) == z);
      prev = z;
    }
  }
}

TEST_CASE("asymptotic main term") {
  CHECK(z_asymptotic(1, 123.0) == doctest::Approx(123.0));
  CHECK(z_asymptotic(2, 1e6) == doctest::Approx(1.3816e7).epsilon(1e-4));
  CHECK_THROWS_AS(z_asymptotic(2, 1.0), PreconditionError);
  const double ratio = z_count(2, 1e6).convert_to<double>() / z_asymptotic(2, 1e6);
  CHECK(ratio >= 0.95);
  CHECK(ratio <= 1.05);
  // ratio drifts toward 1 as d grows
  for (std::size_t n = 2; n <= 3; ++n) {
    double prev = 1e9;
    for (double d : {1e3, 1e4, 1e5, 1e6}) {
      const double r = z_count(n, d).convert_to<double>() / z_asymptotic(n, d);
      CHECK(std::fabs(r - 1) < std::fabs(prev - 1));
      prev = r;
    }
  }
}

TEST_CASE("threshold flooring") {
  CHECK(floor_threshold(15.99) == 15);
  CHECK(floor_threshold(std::pow(100.0, 0.5)) == 10);
  CHECK(floor_threshold(std::nextafter(4.0, 0.0)) == 4);
  CHECK(floor_threshold(0.0) == 0);
}
