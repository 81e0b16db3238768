#include "doctest.h"

#include <regex>

#include "rmi/errors.hpp"
#include "rmi/io.hpp"
#include "rmi/svg.hpp"

using namespace rmi;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("ideal json round trip") {
  const auto I = io::ideal_from_text(R"({"n": 2, "generators": [[2,1],[0,3],[2,0]]})");
  CHECK(I.generators() == std::vector<Monomial>{{2, 0}, {0, 3}});
  CHECK(io::ideal_to_json(I).dump() == R"({"n":2,"generators":[[2,0],[0,3]]})");
  CHECK(io::ideal_from_json(io::ideal_to_json(I)) == I);
  CHECK(io::ideal_from_text(R"({"n":3,"generators":[]})").is_zero());
}

TEST_CASE("malformed ideal json") {
  CHECK_THROWS_AS(io::ideal_from_text("{"), ConfigError);
  CHECK_THROWS_AS(io::ideal_from_text(R"({"n":2})"), ConfigError);
  CHECK_THROWS_AS(io::ideal_from_text(R"({"n":2,"generators":[[1]]})"), ConfigError);
  CHECK_THROWS_AS(io::ideal_from_text(R"({"n":2,"generators":[[1,-1]]})"), ConfigError);
  CHECK_THROWS_AS(io::ideal_from_text(R"({"n":0,"generators":[]})"), ConfigError);
  CHECK_THROWS_AS(io::ideal_from_text(R"({"n":2,"generators":[[0,0]]})"), UnitIdealError);
}

TEST_CASE("sampled ideal carries metadata") {
  const ModelParams mp{2, 20, PowerK{0.5}, 11};
  const auto s = sample_ideal(mp, 4);
  const auto j = io::sampled_to_json(s, mp, 4);
  CHECK(j["meta"]["seed"] == 11);
  CHECK(j["meta"]["trial"] == 4);
  CHECK(j["meta"]["rng-algorithm"] == "philox4x32-10");
  CHECK(j["meta"]["p-resolved"].get<double>() == doctest::Approx(std::pow(20.0, -0.5)));
  CHECK(io::ideal_from_json(j) == s.ideal);
}

TEST_CASE("census json") {
  const auto c = enumerate_standard_pairs(minimalize({Monomial{1, 1, 0}}, 3));
  const auto j = io::census_to_json(c);
  CHECK(j.dump() ==
        R"({"dim":2,"deg":2,"adeg":2,"sp_by_dim":[0,0,2,0],"pairs":[{"alpha":[0,0,0],"free":[0,2]},{"alpha":[0,0,0],"free":[1,2]}],"truncated":false})");
  CHECK(io::big_to_json(BigInt(1) << 70) == "1180591620717411303424");
}

TEST_CASE("staircase svg") {
  const auto box = minimalize({Monomial{2, 0}, Monomial{0, 3}}, 2);
  RenderSpec spec;
  spec.levels = {6};
  const auto svg = render_staircase_svg(box, spec);
  CHECK(svg == render_staircase_svg(box, spec));
  CHECK(count(svg, "<path ") == 1);
  CHECK(count(svg, "<polyline ") == 1);
  CHECK(count(svg, "class=\"outer\"") == 2);
  CHECK(count(svg, "class=\"inner\"") == 1);
  // cap = 5, cell = 72: (0,3) -> (30, 174), (2,0) -> (174, 390)
  CHECK(svg.find("30.00,174.00 174.00,174.00 174.00,390.00") != std::string::npos);

  spec.levels = {3, 6, 12.5};
  CHECK(count(render_staircase_svg(box, spec), "<path ") == 3);

  const auto zero = render_staircase_svg(MonomialIdeal::zero(2), spec);
  CHECK(count(zero, "<polyline") == 0);
  CHECK(count(zero, "<line ") == 2);

  const auto three = render_staircase_svg(minimalize({Monomial{1, 1, 0}, Monomial{0, 0, 2}}, 3), spec);
  CHECK(count(three, "<path ") == 3);
  CHECK(count(three, "<g ") == 3);
  CHECK(three.find("(unit)") != std::string::npos);  // x0, x1 restriction contains 1? no: x2^2 -> 1 off {0,1}

  CHECK_THROWS_AS(render_staircase_svg(MonomialIdeal::zero(4), spec), WrongArity);
}
