#pragma once

// Seeded Monte Carlo harness. Trial i at grid point D samples I(n, D, p) from
// the stream keyed by (seed, i), so results do not depend on thread count.
// Pass/fail thresholds and unspecified constants all come from the config.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmi/bigint.hpp"
#include "rmi/ideal.hpp"
#include "rmi/sampler.hpp"
#include "rmi/staircase.hpp"

namespace rmi {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  std::string name;  // dimension | band | degree | sp-region | sp-count | table1 | L-asymptotics
  std::size_t n = 2;
  std::vector<std::uint64_t> d_grid;
  std::optional<double> p;
  std::optional<double> k;
  std::optional<double> c;
  std::optional<double> t;
  double epsilon = 0.2;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::uint64_t guard = kDefaultGuard;
  unsigned threads = 1;  // not part of the config hash

  double threshold = 0.9;   // a.a.s. pass fraction
  double tolerance = 0.1;   // dimension: |mean - limit|
  double pair_constant = 0.5;  // C in C * Z(t, f_s) < #pairs
  double adeg_lower = 0.5;     // C1
  double adeg_upper = 2.0;     // C2
  // Free sets as index lists; empty means the experiment default.
  std::vector<std::vector<std::size_t>> free_sets;

  std::string mode = "verify";  // table1: verify | sample

  // L-asymptotics
  std::size_t region_dim = 2;
  std::vector<double> f_grid;
  std::string h_rule = "default";  // default: f^((t-1)/t) / ln f; or "const:<h>"

  std::string jsonl_path;
  std::string csv_path;

  PSpec p_spec() const;
  // Throws ConfigError.
  void validate() const;
};

using Json = nlohmann::ordered_json;

ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);
// Canonical form used for hashing (excludes threads and output paths).
Json config_to_json(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

struct Fraction {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t total = 0;

  double value() const;
  // sqrt(f (1 - f) / total)
  double se() const;
};

struct SummaryRow {
  std::string label;
  std::uint64_t D = 0;
  std::uint64_t trials = 0;
  std::vector<Fraction> fractions;
  std::vector<std::pair<std::string, double>> values;
};

// One a.a.s.-style verdict; unjudged verdicts are reported only.
struct Verdict {
  std::string name;
  bool judged = true;
  bool pass = false;
  std::string detail;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<Json> records;  // one per trial (or per fixed input), in grid/trial order
  std::vector<SummaryRow> rows;
  std::vector<Verdict> verdicts;
  // Hard structural-invariant violations and verify-mode mismatches.
  std::vector<std::string> violations;
  std::uint64_t checked_trials = 0;
};

// Throws ConfigError, GuardExceeded.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// First line is metadata; each record carries "elapsed_us" unless disabled.
void write_jsonl(std::ostream& os, const ExperimentResult& r, bool timing = true);
void write_csv(std::ostream& os, const ExperimentResult& r);
void write_report(std::ostream& os, const ExperimentResult& r);

// t - (1 - e^(-c/t!))^C(n,t)
double predicted_dimension(std::size_t n, double c, std::size_t t);

// Trial invariants shared by every sampled experiment.
struct TrialFacts {
  std::size_t dim = 0;
  BigInt deg;
  BigInt adeg;
  std::vector<BigInt> sp_by_dim;
  std::map<std::uint64_t, BigInt> sp_by_free_set;
};
// Appends a message per violated invariant: deg = sp[dim], sp[i] = 0 for
// i > dim, deg = sum of restriction counts.
void check_structure(const MonomialIdeal& ideal, const TrialFacts& facts,
                     std::vector<std::string>& violations);

}  // namespace rmi
