#pragma once

// JSON forms of ideals and pair censuses.
//
//   ideal:  {"n": 3, "generators": [[1,0,2], ...]}
//   census: {"dim", "deg", "adeg", "sp_by_dim": [...], "pairs": [{"alpha", "free"}], "truncated"}
//
// Counts that do not fit in 64 bits are written as decimal strings.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "rmi/ideal.hpp"
#include "rmi/sampler.hpp"
#include "rmi/standard_pairs.hpp"

namespace rmi::io {

using Json = nlohmann::ordered_json;

Json big_to_json(const BigInt& v);

Json monomial_to_json(const Monomial& m);
Json ideal_to_json(const MonomialIdeal& ideal);
// Any generating set is accepted; the result is minimalized. Throws ConfigError
// on malformed input and UnitIdealError on a constant generator.
MonomialIdeal ideal_from_json(const Json& j);
MonomialIdeal ideal_from_text(const std::string& text);

// Ideal JSON plus a "meta" object: seed, trial, rng-algorithm, p-resolved, ...
Json sampled_to_json(const SampledIdeal& s, const ModelParams& params, std::uint64_t trial);

Json census_to_json(const PairCensus& census);

}  // namespace rmi::io
