#include "rmi/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "rmi/divisor_count.hpp"
#include "rmi/errors.hpp"
#include "rmi/io.hpp"
#include "rmi/philox.hpp"
#include "rmi/standard_pairs.hpp"

namespace rmi {

// ---------------------------------------------------------------- config

PSpec ExperimentConfig::p_spec() const {
  if (c && t) return ScaledPower{*c, *t};
  if (k) return PowerK{*k};
  if (p) return ExplicitP{*p};
  throw ConfigError("no probability given: set one of p, k, or c and t");
}

namespace {

const std::vector<std::string> kKinds = {"dimension", "band",   "degree",       "sp-region",
                                         "sp-count",  "table1", "L-asymptotics"};

}  // namespace

void ExperimentConfig::validate() const {
  if (std::find(kKinds.begin(), kKinds.end(), name) == kKinds.end()) {
    throw ConfigError("unknown experiment \"" + name + "\"");
  }
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (!(threshold >= 0 && threshold <= 1)) throw ConfigError("threshold must lie in [0, 1]");
  if (name == "table1") {
    if (mode != "verify" && mode != "sample") throw ConfigError("table1 mode is verify or sample");
    return;
  }
  if (name == "L-asymptotics") {
    if (region_dim < 1) throw ConfigError("region_dim must be >= 1");
    if (f_grid.empty()) throw ConfigError("f_grid must be nonempty");
    if (h_rule != "default" && h_rule.rfind("const:", 0) != 0) {
      throw ConfigError("h_rule is \"default\" or \"const:<h>\"");
    }
    return;
  }
  if (n < 1 || n > 30) throw ConfigError("n must be in [1, 30]");
  if (d_grid.empty()) throw ConfigError("d_grid must be nonempty");
  const int forms = (p ? 1 : 0) + (k ? 1 : 0) + ((c || t) ? 1 : 0);
  if (forms != 1) throw ConfigError("give exactly one of p, k, or (c, t)");
  if ((c.has_value()) != (t.has_value())) throw ConfigError("c and t go together");
  if (name == "dimension") {
    if (!c) throw ConfigError("dimension experiment needs c and t");
    if (*t < 1 || *t > static_cast<double>(n) || std::floor(*t) != *t) {
      throw ConfigError("t must be an integer in [1, n]");
    }
  } else if (!k) {
    throw ConfigError(name + " experiment needs k");
  }
  for (auto D : d_grid) {
    ModelParams mp{n, D, p_spec(), seed};
    try {
      mp.validate();
    } catch (const PreconditionError& e) {
      throw ConfigError(std::string("at D = ") + std::to_string(D) + ": " + e.what());
    }
  }
  for (const auto& s : free_sets) {
    for (auto i : s) {
      if (i >= n) throw ConfigError("free set index out of range");
    }
  }
}

namespace {

template <class T>
void take(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

template <class T>
void take(const Json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  T v{};
  take(j, key, v);
  out = v;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "name",      "n",          "d_grid",     "p",          "k",         "c",
      "t",         "epsilon",    "trials",     "seed",       "guard",     "threads",
      "threshold", "tolerance",  "pair_constant", "adeg_lower", "adeg_upper", "free_sets",
      "mode",      "region_dim", "f_grid",     "h_rule",     "jsonl",     "csv"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  ExperimentConfig cfg;
  take(j, "name", cfg.name);
  take(j, "n", cfg.n);
  take(j, "d_grid", cfg.d_grid);
  take(j, "p", cfg.p);
  take(j, "k", cfg.k);
  take(j, "c", cfg.c);
  take(j, "t", cfg.t);
  take(j, "epsilon", cfg.epsilon);
  take(j, "trials", cfg.trials);
  take(j, "seed", cfg.seed);
  take(j, "guard", cfg.guard);
  take(j, "threads", cfg.threads);
  take(j, "threshold", cfg.threshold);
  take(j, "tolerance", cfg.tolerance);
  take(j, "pair_constant", cfg.pair_constant);
  take(j, "adeg_lower", cfg.adeg_lower);
  take(j, "adeg_upper", cfg.adeg_upper);
  take(j, "free_sets", cfg.free_sets);
  take(j, "mode", cfg.mode);
  take(j, "region_dim", cfg.region_dim);
  take(j, "f_grid", cfg.f_grid);
  take(j, "h_rule", cfg.h_rule);
  take(j, "jsonl", cfg.jsonl_path);
  take(j, "csv", cfg.csv_path);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return config_from_json(Json::parse(ss.str()));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed config " + path + ": " + e.what());
  }
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j{{"name", cfg.name}, {"n", cfg.n}, {"d_grid", cfg.d_grid}};
  if (cfg.p) j["p"] = *cfg.p;
  if (cfg.k) j["k"] = *cfg.k;
  if (cfg.c) j["c"] = *cfg.c;
  if (cfg.t) j["t"] = *cfg.t;
  j["epsilon"] = cfg.epsilon;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["guard"] = cfg.guard;
  j["threshold"] = cfg.threshold;
  j["tolerance"] = cfg.tolerance;
  j["pair_constant"] = cfg.pair_constant;
  j["adeg_lower"] = cfg.adeg_lower;
  j["adeg_upper"] = cfg.adeg_upper;
  j["free_sets"] = cfg.free_sets;
  j["mode"] = cfg.mode;
  j["region_dim"] = cfg.region_dim;
  j["f_grid"] = cfg.f_grid;
  j["h_rule"] = cfg.h_rule;
  return j;
}

std::string config_hash(const ExperimentConfig& cfg) {
  // FNV-1a over the canonical dump.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_to_json(cfg).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double Fraction::value() const {
  return total ? static_cast<double>(passed) / static_cast<double>(total) : 0.0;
}

double Fraction::se() const {
  if (!total) return 0.0;
  const double f = value();
  return std::sqrt(f * (1 - f) / static_cast<double>(total));
}

double predicted_dimension(std::size_t n, double c, std::size_t t) {
  const double tf = std::tgamma(static_cast<double>(t) + 1);
  const double miss = 1 - std::exp(-c / tf);
  const double choose = binomial(n, t).convert_to<double>();
  return static_cast<double>(t) - std::pow(miss, choose);
}

void check_structure(const MonomialIdeal& ideal, const TrialFacts& facts,
                     std::vector<std::string>& violations) {
  if (facts.deg != facts.sp_by_dim.at(facts.dim)) {
    violations.push_back("deg != sp_by_dim[dim]");
  }
  for (std::size_t i = facts.dim + 1; i < facts.sp_by_dim.size(); ++i) {
    if (facts.sp_by_dim[i] != 0) violations.push_back("sp_by_dim[" + std::to_string(i) + "] != 0 above dim");
  }
  try {
    if (degree_by_restrictions(ideal, facts.dim) != facts.deg) {
      violations.push_back("deg != sum of restriction counts");
    }
  } catch (const NotZeroDimensional&) {
    violations.push_back("a restriction of size n - dim is not zero-dimensional");
  }
}

// ---------------------------------------------------------------- running

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  Json record;
  std::vector<std::pair<std::string, std::optional<bool>>> flags;  // nullopt: not counted
  std::vector<std::string> violations;
  std::size_t dim = 0;
};

// Runs f(i) for i in [0, count) on `threads` workers; results by index.
template <class F>
std::vector<Outcome> run_indexed(std::uint64_t count, unsigned threads, F&& f) {
  std::vector<Outcome> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      try {
        const auto start = Clock::now();
        out[i] = f(i);
        out[i].record["elapsed_us"] =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned k = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < k; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Sampled {
  SampledIdeal sample;
  PairCensus census;
  TrialFacts facts;
};

Sampled sample_trial(const ExperimentConfig& cfg, std::uint64_t D, std::uint64_t trial, bool collect,
                     Outcome& o) {
  Sampled s;
  const ModelParams params{cfg.n, D, cfg.p_spec(), cfg.seed};
  s.sample = sample_ideal(params, trial);
  CensusOptions opts;
  opts.guard = cfg.guard;
  opts.collect_pairs = collect;
  s.census = enumerate_standard_pairs(s.sample.ideal, opts);
  s.facts = {s.census.dim, s.census.deg, s.census.adeg, s.census.counts_by_free_size,
             s.census.counts_by_free_set};
  check_structure(s.sample.ideal, s.facts, o.violations);
  o.dim = s.facts.dim;

  Json sp = Json::array();
  for (const auto& v : s.facts.sp_by_dim) sp.push_back(io::big_to_json(v));
  o.record = Json{{"D", D},
                  {"trial", trial},
                  {"raw_count", s.sample.raw_count},
                  {"min_gens", s.sample.ideal.generators().size()},
                  {"dim", s.facts.dim},
                  {"deg", io::big_to_json(s.facts.deg)},
                  {"adeg", io::big_to_json(s.facts.adeg)},
                  {"sp_by_dim", sp}};
  return s;
}

std::string set_label(const VariableSet& s) {
  std::string out = "{";
  for (auto i : s.indices()) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

std::vector<VariableSet> free_sets_or(const ExperimentConfig& cfg,
                                      const std::function<bool(std::size_t)>& keep_size) {
  std::vector<VariableSet> out;
  if (!cfg.free_sets.empty()) {
    for (const auto& s : cfg.free_sets) out.push_back(VariableSet::of(cfg.n, s));
    return out;
  }
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << cfg.n); ++m) {
    VariableSet s(cfg.n, m);
    if (keep_size(s.size())) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

// Folds per-trial outcomes of one grid point into a summary row.
SummaryRow summarize(const std::string& label, std::uint64_t D, std::size_t n,
                     const std::vector<Outcome>& outs, ExperimentResult& res) {
  SummaryRow row;
  row.label = label;
  row.D = D;
  row.trials = outs.size();
  std::vector<double> dim_hist(n + 1, 0.0);
  double sum = 0;
  double sumsq = 0;
  for (const auto& o : outs) {
    for (const auto& [name, flag] : o.flags) {
      auto it = std::find_if(row.fractions.begin(), row.fractions.end(),
                             [&](const Fraction& f) { return f.name == name; });
      if (it == row.fractions.end()) {
        row.fractions.push_back({name, 0, 0});
        it = row.fractions.end() - 1;
      }
      if (flag) {
        it->total += 1;
        it->passed += *flag ? 1 : 0;
      }
    }
    for (const auto& v : o.violations) {
      res.violations.push_back("D=" + std::to_string(D) + " trial=" +
                               o.record.value("trial", Json(0)).dump() + ": " + v);
    }
    if (o.dim < dim_hist.size()) dim_hist[o.dim] += 1;
    sum += static_cast<double>(o.dim);
    sumsq += static_cast<double>(o.dim) * static_cast<double>(o.dim);
    res.records.push_back(o.record);
  }
  const auto T = static_cast<double>(outs.size());
  const double mean = sum / T;
  const double var = T > 1 ? (sumsq - T * mean * mean) / (T - 1) : 0.0;
  row.values.emplace_back("dim_mean", mean);
  row.values.emplace_back("dim_var", var);
  row.values.emplace_back("dim_se", std::sqrt(var / T));
  for (std::size_t s = 0; s <= n; ++s) row.values.emplace_back("P(dim=" + std::to_string(s) + ")", dim_hist[s] / T);
  res.checked_trials += outs.size();
  return row;
}

const Fraction* find_fraction(const SummaryRow& row, const std::string& name) {
  for (const auto& f : row.fractions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

double find_value(const SummaryRow& row, const std::string& name) {
  for (const auto& [k, v] : row.values) {
    if (k == name) return v;
  }
  return std::nan("");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Pass fraction at the largest D meets the threshold; and, optionally, the
// fraction never decreases along the grid.
void aas_verdicts(ExperimentResult& res, const std::string& fraction, bool judged, bool trend) {
  const auto& cfg = res.config;
  std::vector<const Fraction*> series;
  std::vector<std::uint64_t> Ds;
  for (const auto& row : res.rows) {
    if (const auto* f = find_fraction(row, fraction)) {
      series.push_back(f);
      Ds.push_back(row.D);
    }
  }
  if (series.empty()) return;
  const auto* last = series.back();
  Verdict v{fraction + " >= threshold at largest D", judged && last->total > 0,
            last->total > 0 && last->value() >= cfg.threshold, ""};
  v.detail = fmt(last->value()) + " (" + std::to_string(last->passed) + "/" +
             std::to_string(last->total) + ", se " + fmt(last->se()) + ") vs " + fmt(cfg.threshold) +
             " at D=" + std::to_string(Ds.back());
  res.verdicts.push_back(v);
  if (!trend || series.size() < 2) return;
  Verdict m{fraction + " non-decreasing in D", judged, true, ""};
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0 && series[i]->value() < series[i - 1]->value()) m.pass = false;
    m.detail += (i ? ", " : "") + std::string("D=") + std::to_string(Ds[i]) + ":" + fmt(series[i]->value());
  }
  res.verdicts.push_back(m);
}

double thr_pow(std::uint64_t D, double e) { return std::pow(static_cast<double>(D), e); }

// ---- dimension

void run_dimension(ExperimentResult& res) {
  const auto& cfg = res.config;
  const auto t = static_cast<std::size_t>(*cfg.t);
  const double predicted = predicted_dimension(cfg.n, *cfg.c, t);
  std::vector<double> gaps;
  for (auto D : cfg.d_grid) {
    auto outs = run_indexed(cfg.trials, cfg.threads, [&](std::uint64_t i) {
      Outcome o;
      sample_trial(cfg, D, i, false, o);
      return o;
    });
    auto row = summarize("D=" + std::to_string(D), D, cfg.n, outs, res);
    const double mean = find_value(row, "dim_mean");
    row.values.emplace_back("predicted", predicted);
    row.values.emplace_back("gap", std::fabs(mean - predicted));
    gaps.push_back(std::fabs(mean - predicted));
    res.rows.push_back(std::move(row));
  }
  const auto& last = res.rows.back();
  Verdict v{"|mean dim - limit| <= tolerance at largest D", true,
            gaps.back() <= cfg.tolerance, ""};
  v.detail = "mean " + fmt(find_value(last, "dim_mean")) + " (se " + fmt(find_value(last, "dim_se")) +
             "), limit " + fmt(predicted) + ", gap " + fmt(gaps.back()) + " vs " + fmt(cfg.tolerance);
  res.verdicts.push_back(v);
  if (gaps.size() > 1) {
    Verdict m{"gap non-increasing in D", true, true, ""};
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      if (i > 0 && gaps[i] > gaps[i - 1]) m.pass = false;
      m.detail += (i ? ", " : "") + std::string("D=") + std::to_string(cfg.d_grid[i]) + ":" + fmt(gaps[i]);
    }
    res.verdicts.push_back(m);
  }
}

// ---- band

void run_band(ExperimentResult& res) {
  const auto& cfg = res.config;
  const std::size_t n = cfg.n;
  for (auto D : cfg.d_grid) {
    std::vector<Thresholds> th;
    for (std::size_t s = 0; s <= n; ++s) th.push_back(default_thresholds(*cfg.k, static_cast<double>(s), cfg.epsilon, D));
    auto outs = run_indexed(cfg.trials, cfg.threads, [&](std::uint64_t i) {
      Outcome o;
      auto s = sample_trial(cfg, D, i, false, o);
      const auto& I = s.sample.ideal;
      const auto band = band_check(I, {th[0].f, th[0].g, th[0].h, D});
      o.record["band_pass"] = band.pass;
      o.record["band_witness"] = band.witness ? io::monomial_to_json(*band.witness) : Json();
      o.flags.emplace_back("band", band.pass);
      std::optional<bool> tail;
      if (n <= 3) {
        const auto prod = max_staircase_product(I, D, cfg.guard);
        tail = prod.convert_to<long double>() <= static_cast<long double>(th[0].h);
        o.record["max_staircase_product"] = io::big_to_json(prod);
        o.record["tail_pass"] = *tail;
      }
      o.flags.emplace_back("tail", tail);
      o.flags.emplace_back("band+tail", tail ? std::optional<bool>(band.pass && *tail) : std::nullopt);

      // Projected bands: every restriction to |T| = n - s against (f_s, g_s).
      std::vector<bool> all_pass(n + 1, true);
      Json restricted = Json::array();
      for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        const VariableSet T(n, m);
        const std::size_t s = n - T.size();
        const auto r = restrict(I, T);
        bool pass = false;
        if (r.is_unit()) {
          // The restriction is generated by 1, whose divisor box has volume 1.
          pass = th[s].f < 1 && 1 < th[s].g;
        } else {
          pass = band_check(r.ideal(), {th[s].f, th[s].g, th[s].h, D}).pass;
        }
        all_pass[T.size()] = all_pass[T.size()] && pass;
        restricted.push_back(Json{{"T", T.indices()}, {"unit", r.is_unit()}, {"pass", pass}});
      }
      o.record["restricted_bands"] = restricted;
      // Only s <= k carries a band claim; larger s is still in the record.
      for (std::size_t size = 1; size <= n; ++size) {
        if (static_cast<double>(n - size) > *cfg.k) continue;
        o.flags.emplace_back("restricted-band|T|=" + std::to_string(size), all_pass[size]);
      }
      return o;
    });
    auto row = summarize("D=" + std::to_string(D), D, n, outs, res);
    row.values.emplace_back("f0", th[0].f);
    row.values.emplace_back("g0", th[0].g);
    row.values.emplace_back("h0", th[0].h);
    res.rows.push_back(std::move(row));
  }
  aas_verdicts(res, "band+tail", n <= 3, true);
  aas_verdicts(res, "band", false, false);
}

// ---- degree

void run_degree(ExperimentResult& res) {
  const auto& cfg = res.config;
  const std::size_t n = cfg.n;
  const auto s = static_cast<std::size_t>(std::floor(*cfg.k));
  const bool bounded = s < n;
  for (auto D : cfg.d_grid) {
    const auto th = default_thresholds(*cfg.k, static_cast<double>(s), cfg.epsilon, D);
    BigInt z_lo = 0;
    BigInt z_hi = 0;
    if (bounded) {
      z_lo = z_count(n - s, th.f);
      z_hi = z_count(n - s, th.h);
    }
    const BigInt choose = binomial(n, s);
    auto outs = run_indexed(cfg.trials, cfg.threads, [&](std::uint64_t i) {
      Outcome o;
      auto smp = sample_trial(cfg, D, i, false, o);
      const bool cond = smp.facts.dim == s;
      o.flags.emplace_back("dim==s", cond);
      std::optional<bool> plain;
      std::optional<bool> scaled;
      if (cond && bounded) {
        const auto& deg = smp.facts.deg;
        plain = z_lo < deg && deg < z_hi;
        scaled = choose * z_lo < deg && deg < choose * z_hi;
        o.record["deg_in_bounds"] = *plain;
        o.record["deg_in_scaled_bounds"] = *scaled;
      }
      o.flags.emplace_back("deg-bounds", plain);
      o.flags.emplace_back("deg-bounds-binomial", scaled);
      return o;
    });
    auto row = summarize("D=" + std::to_string(D), D, n, outs, res);
    row.values.emplace_back("s", static_cast<double>(s));
    row.values.emplace_back("Z_lower", z_lo.convert_to<double>());
    row.values.emplace_back("Z_upper", z_hi.convert_to<double>());
    res.rows.push_back(std::move(row));
  }
  aas_verdicts(res, "deg-bounds", bounded, true);
  aas_verdicts(res, "deg-bounds-binomial", bounded, false);
}

// ---- sp-region

void run_sp_region(ExperimentResult& res) {
  const auto& cfg = res.config;
  const std::size_t n = cfg.n;
  const auto s0 = static_cast<std::size_t>(std::floor(*cfg.k));
  const auto sets = free_sets_or(cfg, [&](std::size_t size) { return size == s0; });
  for (auto D : cfg.d_grid) {
    struct Region {
      VariableSet S;
      std::vector<Monomial> lifted;
    };
    std::vector<Region> regions;
    for (const auto& S : sets) {
      const std::size_t s = S.size();
      const VariableSet T = S.complement();
      Region reg{S, {}};
      if (T.size() > 0) {
        const double f = thr_pow(D, *cfg.k - static_cast<double>(s) - cfg.epsilon);
        const double h = thr_pow(D, *cfg.k - static_cast<double>(s) - 1 + cfg.epsilon);
        if (region_L_size(f, h, T.size()) > cfg.guard) throw GuardExceeded("L(f, h) exceeds guard");
        const Restriction frame(T, MonomialIdeal::zero(T.size()));
        for (const auto& a : region_L(f, h, T)) reg.lifted.push_back(frame.lift(a));
      }
      regions.push_back(std::move(reg));
    }
    auto outs = run_indexed(cfg.trials, cfg.threads, [&](std::uint64_t i) {
      Outcome o;
      auto smp = sample_trial(cfg, D, i, true, o);
      Json per = Json::array();
      for (const auto& reg : regions) {
        bool all = true;
        for (const auto& a : reg.lifted) {
          const StandardPair want{a, reg.S};
          const bool found =
              smp.census.truncated
                  ? is_standard(smp.sample.ideal, a, reg.S)
                  : std::binary_search(smp.census.pairs.begin(), smp.census.pairs.end(), want, pair_less);
          if (!found) {
            all = false;
            break;
          }
        }
        o.flags.emplace_back("region S=" + set_label(reg.S), all);
        per.push_back(Json{{"S", reg.S.indices()}, {"L_size", reg.lifted.size()}, {"all_standard", all}});
      }
      o.record["regions"] = per;
      return o;
    });
    auto row = summarize("D=" + std::to_string(D), D, n, outs, res);
    for (const auto& reg : regions) {
      row.values.emplace_back("|L| S=" + set_label(reg.S), static_cast<double>(reg.lifted.size()));
    }
    res.rows.push_back(std::move(row));
  }
  for (const auto& S : sets) aas_verdicts(res, "region S=" + set_label(S), true, true);
}

// ---- sp-count

void run_sp_count(ExperimentResult& res) {
  const auto& cfg = res.config;
  const std::size_t n = cfg.n;
  const double k = *cfg.k;
  const auto sets = free_sets_or(cfg, [&](std::size_t size) { return size < n; });
  std::vector<std::pair<std::string, bool>> judged;
  for (auto D : cfg.d_grid) {
    struct Bounds {
      VariableSet S;
      bool zero_regime;
      BigInt lo;
      BigInt hi;
    };
    std::vector<Bounds> bounds;
    for (const auto& S : sets) {
      const auto s = static_cast<double>(S.size());
      const std::size_t t = n - S.size();
      Bounds b{S, k < s, 0, 0};
      if (!b.zero_regime && t > 0) {
        b.lo = z_count(t, thr_pow(D, k - s - cfg.epsilon));
        b.hi = z_count(t, thr_pow(D, k - s + cfg.epsilon));
      }
      bounds.push_back(std::move(b));
    }
    const long double adeg_lo =
        z_count(n, thr_pow(D, k - cfg.epsilon)).convert_to<long double>() * cfg.adeg_lower;
    const long double adeg_hi =
        z_count(n, thr_pow(D, k + cfg.epsilon)).convert_to<long double>() * cfg.adeg_upper;

    auto outs = run_indexed(cfg.trials, cfg.threads, [&](std::uint64_t i) {
      Outcome o;
      auto smp = sample_trial(cfg, D, i, false, o);
      Json per = Json::array();
      for (const auto& b : bounds) {
        BigInt count = 0;
        if (auto it = smp.facts.sp_by_free_set.find(b.S.mask()); it != smp.facts.sp_by_free_set.end()) {
          count = it->second;
        }
        bool pass = false;
        if (b.zero_regime) {
          pass = count == 0;
        } else {
          const auto c = count.convert_to<long double>();
          pass = static_cast<long double>(cfg.pair_constant) * b.lo.convert_to<long double>() < c &&
                 count < b.hi;
        }
        o.flags.emplace_back((b.zero_regime ? "zero S=" : "count S=") + set_label(b.S), pass);
        per.push_back(Json{{"S", b.S.indices()}, {"count", io::big_to_json(count)}, {"pass", pass}});
      }
      const auto adeg = smp.facts.adeg.convert_to<long double>();
      o.flags.emplace_back("adeg-bounds", adeg_lo < adeg && adeg < adeg_hi);
      o.record["pair_counts"] = per;
      return o;
    });
    auto row = summarize("D=" + std::to_string(D), D, n, outs, res);
    for (const auto& b : bounds) {
      if (b.zero_regime) continue;
      row.values.emplace_back("C*Z(t,f_s) S=" + set_label(b.S),
                              cfg.pair_constant * b.lo.convert_to<double>());
      row.values.emplace_back("Z(t,h_s) S=" + set_label(b.S), b.hi.convert_to<double>());
    }
    row.values.emplace_back("adeg_lower", static_cast<double>(adeg_lo));
    row.values.emplace_back("adeg_upper", static_cast<double>(adeg_hi));
    res.rows.push_back(std::move(row));
  }
  for (const auto& S : sets) {
    const auto s = static_cast<double>(S.size());
    const bool zero = k < s;
    // Within D^(+-eps) of a regime boundary (k = s, or k = n) the run is reported only.
    const bool near = std::fabs(k - s) <= cfg.epsilon || (!zero && k > static_cast<double>(n) - cfg.epsilon);
    aas_verdicts(res, (zero ? "zero S=" : "count S=") + set_label(S), !near, true);
  }
  aas_verdicts(res, "adeg-bounds", false, false);
}

// ---- table 1

struct TableRow {
  std::vector<std::array<std::uint64_t, 3>> gens;
  std::array<std::uint64_t, 5> expected;
};

const std::vector<TableRow>& reference_rows() {
  static const std::vector<TableRow> rows = {
      {{{8, 35, 5}, {8, 25, 11}, {18, 16, 16}, {1, 29, 31}, {5, 14, 40}, {2, 19, 40}}, {2, 20, 2781, 441, 20}},
      {{{33, 23, 0}, {40, 1, 1}, {6, 49, 4}, {21, 6, 5}, {19, 3, 28}, {11, 16, 28}, {13, 2, 36}},
       {2, 7, 14348, 427, 7}},
      {{{1, 45, 1}, {1, 21, 4}, {14, 6, 6}, {38, 4, 17}, {2, 0, 37}, {0, 25, 39}, {0, 0, 52}},
       {2, 1, 8165, 361, 1}},
      {{{50, 14, 0}, {7, 41, 0}, {51, 2, 4}, {10, 24, 4}, {6, 0, 8}, {0, 27, 8}, {3, 14, 16}, {0, 25, 40}},
       {1, 237, 9184, 237, 0}},
      {{{12, 52, 0}, {4, 16, 3}, {54, 6, 4}, {40, 11, 7}, {4, 0, 10}, {0, 1, 39}}, {1, 392, 2790, 392, 0}},
      {{{30, 5, 0}, {28, 22, 1}, {18, 22, 8}, {36, 3, 9}, {6, 31, 9}, {0, 4, 13}, {1, 0, 54}},
       {1, 452, 4181, 452, 0}},
  };
  return rows;
}

Outcome table_outcome(const MonomialIdeal& I, const CensusOptions& opts) {
  Outcome o;
  const auto census = enumerate_standard_pairs(I, opts);
  TrialFacts facts{census.dim, census.deg, census.adeg, census.counts_by_free_size,
                   census.counts_by_free_set};
  check_structure(I, facts, o.violations);
  o.dim = census.dim;
  Json sp = Json::array();
  for (const auto& v : census.counts_by_free_size) sp.push_back(io::big_to_json(v));
  o.record = Json{{"generators", io::ideal_to_json(I)["generators"]},
                  {"dim", census.dim},
                  {"deg", io::big_to_json(census.deg)},
                  {"adeg", io::big_to_json(census.adeg)},
                  {"sp_by_dim", sp}};
  return o;
}

void run_table1(ExperimentResult& res) {
  auto& cfg = res.config;
  CensusOptions opts;
  opts.guard = cfg.guard;
  opts.collect_pairs = false;
  if (cfg.mode == "verify") {
    const auto& rows = reference_rows();
    auto outs = run_indexed(rows.size(), cfg.threads, [&](std::uint64_t i) {
      std::vector<Monomial> gens;
      for (const auto& g : rows[i].gens) gens.push_back(Monomial{g[0], g[1], g[2]});
      auto o = table_outcome(minimalize(std::move(gens), 3), opts);
      const auto& e = rows[i].expected;
      const Json got{o.record["dim"], o.record["deg"], o.record["sp_by_dim"][0], o.record["sp_by_dim"][1],
                     o.record["sp_by_dim"][2]};
      const Json want{e[0], e[1], e[2], e[3], e[4]};
      const bool match = got == want;
      Json rec{{"row", i + 1}};
      rec.update(o.record);
      o.record = std::move(rec);
      o.record["expected"] = want;
      o.record["match"] = match;
      o.flags.emplace_back("rows-match", match);
      if (!match) o.violations.push_back("row " + std::to_string(i + 1) + ": got " + got.dump() + ", reference " + want.dump());
      return o;
    });
    for (auto& o : outs) o.record["trial"] = o.record["row"];
    auto row = summarize("verify", 65, 3, outs, res);
    res.rows.push_back(std::move(row));
    const auto* f = find_fraction(res.rows.back(), "rows-match");
    res.verdicts.push_back({"all reference rows reproduced", true, f->passed == f->total,
                            std::to_string(f->passed) + "/" + std::to_string(f->total)});
    return;
  }
  cfg.n = 3;
  cfg.d_grid = {65};
  const ModelParams params{3, 65, RationalP{1, 4225}, cfg.seed};
  auto outs = run_indexed(cfg.trials, cfg.threads, [&](std::uint64_t i) {
    auto s = sample_ideal(params, i);
    auto o = table_outcome(s.ideal, opts);
    Json rec{{"trial", i}, {"raw_count", s.raw_count}};
    rec.update(o.record);
    o.record = std::move(rec);
    return o;
  });
  res.rows.push_back(summarize("sample D=65", 65, 3, outs, res));
}

// ---- L asymptotics

void run_L_asymptotics(ExperimentResult& res) {
  const auto& cfg = res.config;
  const std::size_t t = cfg.region_dim;
  std::vector<double> ratios;
  for (double f : cfg.f_grid) {
    double h = 0;
    if (cfg.h_rule == "default") {
      h = f > 1 ? std::pow(f, static_cast<double>(t - 1) / static_cast<double>(t)) / std::log(f) : 0;
    } else {
      h = std::stod(cfg.h_rule.substr(6));
    }
    const BigInt L = region_L_size(f, h, t);
    const BigInt Z = z_count(t, f);
    const double ratio = Z > 0 ? L.convert_to<double>() / Z.convert_to<double>() : std::nan("");
    ratios.push_back(ratio);
    SummaryRow row;
    row.label = "f=" + fmt(f);
    row.values = {{"f", f}, {"h", h}, {"L", L.convert_to<double>()}, {"Z", Z.convert_to<double>()}, {"ratio", ratio}};
    res.records.push_back(Json{{"f", f}, {"h", h}, {"L", io::big_to_json(L)}, {"Z", io::big_to_json(Z)}, {"ratio", ratio}});
    res.rows.push_back(std::move(row));
  }
  Verdict v{"|L|/Z stabilizes (< 5% change over the last two f) at a value <= 1", false, false, ""};
  if (ratios.size() >= 2) {
    const double a = ratios[ratios.size() - 2];
    const double b = ratios.back();
    const double change = std::fabs(b - a) / std::fabs(a);
    v.pass = change < 0.05 && b <= 1;
    v.detail = "last ratios " + fmt(a) + ", " + fmt(b) + ", change " + fmt(change);
  }
  res.verdicts.push_back(v);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.config = cfg;
  if (cfg.name == "dimension") {
    run_dimension(res);
  } else if (cfg.name == "band") {
    run_band(res);
  } else if (cfg.name == "degree") {
    run_degree(res);
  } else if (cfg.name == "sp-region") {
    run_sp_region(res);
  } else if (cfg.name == "sp-count") {
    run_sp_count(res);
  } else if (cfg.name == "table1") {
    run_table1(res);
  } else {
    run_L_asymptotics(res);
  }
  return res;
}

// ---------------------------------------------------------------- output

namespace {

Json meta_json(const ExperimentResult& r) {
  return Json{{"type", "meta"},
              {"experiment", r.config.name},
              {"config_hash", config_hash(r.config)},
              {"seed", r.config.seed},
              {"rng", kRngAlgorithm},
              {"version", kVersion},
              {"config", config_to_json(r.config)}};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_jsonl(std::ostream& os, const ExperimentResult& r, bool timing) {
  os << meta_json(r).dump() << '\n';
  for (const auto& rec : r.records) {
    if (timing || !rec.contains("elapsed_us")) {
      os << rec.dump() << '\n';
    } else {
      Json copy = rec;
      copy.erase("elapsed_us");
      os << copy.dump() << '\n';
    }
  }
}

void write_csv(std::ostream& os, const ExperimentResult& r) {
  os << "# experiment=" << r.config.name << " config_hash=" << config_hash(r.config)
     << " seed=" << r.config.seed << " rng=" << kRngAlgorithm << " version=" << kVersion << '\n';
  // Column union across rows, in first-seen order.
  std::vector<std::string> fractions;
  std::vector<std::string> values;
  for (const auto& row : r.rows) {
    for (const auto& f : row.fractions) {
      if (std::find(fractions.begin(), fractions.end(), f.name) == fractions.end()) fractions.push_back(f.name);
    }
    for (const auto& [k, _] : row.values) {
      if (std::find(values.begin(), values.end(), k) == values.end()) values.push_back(k);
    }
  }
  os << "label,D,trials";
  for (const auto& f : fractions) {
    os << ',' << csv_escape(f + ":passed") << ',' << csv_escape(f + ":total") << ','
       << csv_escape(f + ":fraction") << ',' << csv_escape(f + ":se");
  }
  for (const auto& v : values) os << ',' << csv_escape(v);
  os << '\n';
  for (const auto& row : r.rows) {
    os << csv_escape(row.label) << ',' << row.D << ',' << row.trials;
    for (const auto& name : fractions) {
      const auto* f = find_fraction(row, name);
      if (f) {
        os << ',' << f->passed << ',' << f->total << ',' << num(f->total ? f->value() : std::nan(""))
           << ',' << num(f->total ? f->se() : std::nan(""));
      } else {
        os << ",,,,";
      }
    }
    for (const auto& name : values) os << ',' << num(find_value(row, name));
    os << '\n';
  }
}

void write_report(std::ostream& os, const ExperimentResult& r) {
  os << "experiment " << r.config.name << " (config " << config_hash(r.config) << ", seed "
     << r.config.seed << ")\n";
  for (const auto& row : r.rows) {
    os << "  " << row.label;
    if (row.trials) os << "  trials=" << row.trials;
    for (const auto& f : row.fractions) {
      if (f.total) os << "  " << f.name << "=" << fmt(f.value()) << "±" << fmt(f.se()) << " (n=" << f.total << ")";
    }
    for (const auto& [k, v] : row.values) {
      if (row.label != k + "=" + fmt(v)) os << "  " << k << "=" << fmt(v);
    }
    os << '\n';
  }
  for (const auto& v : r.verdicts) {
    os << "  [" << (v.judged ? (v.pass ? "pass" : "FAIL") : "info") << "] " << v.name << ": " << v.detail << '\n';
  }
  os << "  structural checks: " << r.checked_trials << " trials, " << r.violations.size() << " violations\n";
  for (const auto& v : r.violations) os << "    " << v << '\n';
}

}  // namespace rmi
