#include "rmi/io.hpp"

#include "rmi/errors.hpp"
#include "rmi/philox.hpp"

namespace rmi::io {

Json big_to_json(const BigInt& v) {
  if (auto u = to_u64(v)) return *u;
  return v.str();
}

Json monomial_to_json(const Monomial& m) {
  Json arr = Json::array();
  for (auto e : m.exponents()) arr.push_back(e);
  return arr;
}

Json ideal_to_json(const MonomialIdeal& ideal) {
  Json gens = Json::array();
  for (const auto& g : ideal.generators()) gens.push_back(monomial_to_json(g));
  return Json{{"n", ideal.arity()}, {"generators", gens}};
}

MonomialIdeal ideal_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("generators")) {
    throw ConfigError("ideal JSON needs \"n\" and \"generators\"");
  }
  if (!j["n"].is_number_unsigned()) throw ConfigError("\"n\" must be a non-negative integer");
  const auto n = j["n"].get<std::size_t>();
  if (n < 1 || n > kMaxVariables) throw ConfigError("\"n\" must be in [1, 64]");
  if (!j["generators"].is_array()) throw ConfigError("\"generators\" must be an array");
  std::vector<Monomial> gens;
  for (const auto& g : j["generators"]) {
    if (!g.is_array() || g.size() != n) {
      throw ConfigError("each generator must be an array of " + std::to_string(n) + " exponents");
    }
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!g[i].is_number_unsigned()) throw ConfigError("exponents must be non-negative integers");
      m.set(i, g[i].get<std::uint64_t>());
    }
    gens.push_back(std::move(m));
  }
  return minimalize(std::move(gens), n);
}

MonomialIdeal ideal_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed ideal JSON: ") + e.what());
  }
  return ideal_from_json(j);
}

Json sampled_to_json(const SampledIdeal& s, const ModelParams& params, std::uint64_t trial) {
  Json meta{{"seed", params.seed},
            {"trial", trial},
            {"rng-algorithm", kRngAlgorithm},
            {"p-resolved", params.p()},
            {"p-spec", describe(params.p_spec)},
            {"max-degree", params.max_degree},
            {"raw-count", s.raw_count}};
  Json out{{"meta", meta}};
  out.update(ideal_to_json(s.ideal));
  return out;
}

Json census_to_json(const PairCensus& census) {
  Json sp = Json::array();
  for (const auto& v : census.counts_by_free_size) sp.push_back(big_to_json(v));
  Json pairs = Json::array();
  for (const auto& p : census.pairs) {
    pairs.push_back(Json{{"alpha", monomial_to_json(p.alpha)}, {"free", p.free_set.indices()}});
  }
  return Json{{"dim", census.dim},
              {"deg", big_to_json(census.deg)},
              {"adeg", big_to_json(census.adeg)},
              {"sp_by_dim", sp},
              {"pairs", pairs},
              {"truncated", census.truncated}};
}

}  // namespace rmi::io
