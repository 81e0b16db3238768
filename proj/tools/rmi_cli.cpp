// rmi: invariants, sampling, and experiments for random monomial ideals.
//
// Exit codes: 0 ok, 1 assertion failure, 2 usage, 3 guard exceeded.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rmi/divisor_count.hpp"
#include "rmi/errors.hpp"
#include "rmi/experiments.hpp"
#include "rmi/io.hpp"
#include "rmi/sampler.hpp"
#include "rmi/standard_pairs.hpp"
#include "rmi/staircase.hpp"
#include "rmi/svg.hpp"

namespace {

using rmi::io::Json;

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kUsage = 2;
constexpr int kGuard = 3;

struct ModelFlags {
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> max_degree;
  std::optional<double> p;
  std::optional<double> k;
  std::optional<double> c;
  std::optional<double> t;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "number of variables");
    app->add_option("--max-degree,-D", max_degree, "maximum degree D");
    auto* po = app->add_option("--p", p, "selection probability");
    auto* ko = app->add_option("--k", k, "p = D^-k");
    auto* co = app->add_option("--c", c, "p = c * D^-t");
    auto* to = app->add_option("--t", t, "p = c * D^-t");
    po->excludes(ko)->excludes(co)->excludes(to);
    ko->excludes(co)->excludes(to);
    co->needs(to);
    to->needs(co);
    app->add_option("--seed", seed, "RNG seed");
    app->add_option("--trial", trial, "trial index within the seed");
  }

  bool given() const { return n || max_degree || p || k || c; }

  rmi::ModelParams params() const {
    if (!n || !max_degree) throw rmi::ConfigError("sampling needs --n and --max-degree");
    rmi::ModelParams mp;
    mp.n = *n;
    mp.max_degree = *max_degree;
    mp.seed = seed;
    if (p) {
      mp.p_spec = rmi::ExplicitP{*p};
    } else if (k) {
      mp.p_spec = rmi::PowerK{*k};
    } else if (c && t) {
      mp.p_spec = rmi::ScaledPower{*c, *t};
    } else {
      throw rmi::ConfigError("give one of --p, --k, or --c with --t");
    }
    try {
      mp.validate();
    } catch (const rmi::PreconditionError& e) {
      throw rmi::ConfigError(e.what());
    }
    return mp;
  }
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw rmi::ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw rmi::ConfigError("cannot write " + output);
  out << text;
}

// Ideal from --input, else sampled from the model flags.
rmi::MonomialIdeal load_ideal(const std::string& input, const ModelFlags& mf,
                              std::optional<std::uint64_t>* max_degree = nullptr) {
  if (!input.empty()) {
    if (max_degree && mf.max_degree) *max_degree = mf.max_degree;
    return rmi::io::ideal_from_text(read_file(input));
  }
  if (!mf.given()) throw rmi::ConfigError("give --input or sampling flags");
  const auto mp = mf.params();
  if (max_degree) *max_degree = mp.max_degree;
  return rmi::sample_ideal(mp, mf.trial).ideal;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw rmi::ConfigError("bad number \"" + item + "\"");
    }
    if (used != item.size()) throw rmi::ConfigError("bad number \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

std::string invariants_csv(const Json& j) {
  std::ostringstream os;
  os << "n,min_gens,dim,deg,adeg";
  for (std::size_t i = 0; i < j["sp_by_dim"].size(); ++i) os << ",sp" << i;
  if (j.contains("max_staircase_product")) os << ",max_staircase_product";
  os << '\n';
  auto plain = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  os << j["n"] << ',' << j["min_gens"] << ',' << j["dim"] << ',' << plain(j["deg"]) << ','
     << plain(j["adeg"]);
  for (const auto& v : j["sp_by_dim"]) os << ',' << plain(v);
  if (j.contains("max_staircase_product")) os << ',' << plain(j["max_staircase_product"]);
  os << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random monomial ideals: invariants, standard pairs, experiments"};
  app.require_subcommand(1);

  std::string output;
  std::string format = "json";
  std::uint64_t guard = rmi::kDefaultGuard;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", output, "output file (default stdout)");
    sub->add_option("--guard", guard, "enumeration guard");
  };

  // sample
  ModelFlags sample_flags;
  auto* sample = app.add_subcommand("sample", "draw one ideal from I(n, D, p)");
  sample_flags.attach(sample);
  common(sample);

  // invariants
  ModelFlags inv_flags;
  std::string inv_input;
  auto* inv = app.add_subcommand("invariants", "dimension, degree, standard-pair counts");
  inv->add_option("--input,-i", inv_input, "ideal JSON file ('-' for stdin)");
  inv_flags.attach(inv);
  inv->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  common(inv);

  // std-pairs
  ModelFlags sp_flags;
  std::string sp_input;
  std::size_t cap = 1'000'000;
  auto* sp = app.add_subcommand("std-pairs", "standard-pair census as JSON");
  sp->add_option("--input,-i", sp_input, "ideal JSON file ('-' for stdin)");
  sp->add_option("--cap", cap, "maximum number of listed pairs");
  sp_flags.attach(sp);
  common(sp);

  // zcount
  std::size_t zn = 1;
  double zd = 0;
  bool asymptotic = false;
  bool brute = false;
  auto* zc = app.add_subcommand("zcount", "Z(n, d) = #{a : prod(a_i + 1) <= d}");
  zc->add_option("--n", zn, "order")->required();
  zc->add_option("--d", zd, "threshold")->required();
  zc->add_flag("--asymptotic", asymptotic, "also print d (ln d)^(n-1) / (n-1)! and the ratio");
  zc->add_flag("--brute-force", brute, "also count by direct enumeration");
  common(zc);

  // experiment
  std::string config_path;
  std::optional<std::string> ex_name;
  std::optional<std::size_t> ex_n;
  std::optional<std::string> ex_grid;
  std::optional<double> ex_p, ex_k, ex_c, ex_t, ex_eps;
  std::optional<std::uint64_t> ex_trials, ex_seed;
  std::optional<unsigned> ex_threads;
  std::optional<std::string> ex_mode;
  std::string jsonl_path;
  std::string csv_path;
  auto* ex = app.add_subcommand("experiment", "run a Monte Carlo experiment");
  ex->add_option("--config", config_path, "JSON config file");
  ex->add_option("--name", ex_name, "experiment kind");
  ex->add_option("--n", ex_n, "number of variables");
  ex->add_option("--d-grid", ex_grid, "comma-separated D values");
  ex->add_option("--p", ex_p, "selection probability");
  ex->add_option("--k", ex_k, "p = D^-k");
  ex->add_option("--c", ex_c, "p = c * D^-t");
  ex->add_option("--t", ex_t, "p = c * D^-t");
  ex->add_option("--epsilon", ex_eps, "threshold exponent slack");
  ex->add_option("--trials", ex_trials, "trials per grid point");
  ex->add_option("--seed", ex_seed, "RNG seed");
  ex->add_option("--threads", ex_threads, "worker threads");
  ex->add_option("--mode", ex_mode, "table1: verify or sample");
  ex->add_option("--jsonl", jsonl_path, "trial records (JSONL)");
  ex->add_option("--csv", csv_path, "summary rows (CSV)");
  ex->add_option("--format", format, "stdout summary: json (report) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  std::optional<std::uint64_t> ex_guard;
  ex->add_option("--guard", ex_guard, "enumeration guard");
  ex->add_option("--output,-o", output, "report file (default stdout)");

  // staircase-svg
  ModelFlags svg_flags;
  std::string svg_input;
  std::string levels;
  std::uint64_t axis_cap = 0;
  double panel = 420;
  auto* svg = app.add_subcommand("staircase-svg", "SVG staircase with hyperbola levels");
  svg->add_option("--input,-i", svg_input, "ideal JSON file ('-' for stdin)");
  svg->add_option("--levels", levels, "comma-separated hyperbola levels c, (x+1)(y+1)=c");
  svg->add_option("--axis-cap", axis_cap, "largest exponent shown");
  svg->add_option("--size", panel, "panel size in pixels");
  svg_flags.attach(svg);
  common(svg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sample) {
      const auto mp = sample_flags.params();
      const auto s = rmi::sample_ideal(mp, sample_flags.trial);
      emit(rmi::io::sampled_to_json(s, mp, sample_flags.trial).dump(2) + "\n", output);
      return kOk;
    }

    if (*inv) {
      std::optional<std::uint64_t> D;
      const auto I = load_ideal(inv_input, inv_flags, &D);
      rmi::CensusOptions opts;
      opts.guard = guard;
      opts.collect_pairs = false;
      const auto census = rmi::enumerate_standard_pairs(I, opts);
      if (rmi::degree_by_restrictions(I, census.dim) != census.deg) {
        std::cerr << "error: degree cross-check failed\n";
        return kAssertion;
      }
      Json sp = Json::array();
      for (const auto& v : census.counts_by_free_size) sp.push_back(rmi::io::big_to_json(v));
      Json j{{"n", I.arity()},
             {"min_gens", I.generators().size()},
             {"dim", census.dim},
             {"deg", rmi::io::big_to_json(census.deg)},
             {"adeg", rmi::io::big_to_json(census.adeg)},
             {"sp_by_dim", sp}};
      if (D) {
        j["max_degree"] = *D;
        j["max_staircase_product"] = rmi::io::big_to_json(rmi::max_staircase_product(I, *D, guard));
      }
      emit(format == "csv" ? invariants_csv(j) : j.dump(2) + "\n", output);
      return kOk;
    }

    if (*sp) {
      const auto I = load_ideal(sp_input, sp_flags);
      rmi::CensusOptions opts;
      opts.guard = guard;
      opts.pair_cap = cap;
      emit(rmi::io::census_to_json(rmi::enumerate_standard_pairs(I, opts)).dump(2) + "\n", output);
      return kOk;
    }

    if (*zc) {
      if (zn < 1) throw rmi::ConfigError("--n must be >= 1");
      const auto z = rmi::z_count(zn, zd);
      std::ostringstream os;
      os << "Z(" << zn << ", " << zd << ") = " << z << '\n';
      if (brute) os << "brute force = " << rmi::z_count_bruteforce(zn, rmi::floor_threshold(zd), guard) << '\n';
      if (asymptotic) {
        if (!(zd > 1)) throw rmi::ConfigError("--asymptotic needs d > 1");
        const double main = rmi::z_asymptotic(zn, zd);
        os << std::setprecision(10) << "main term = " << main << '\n'
           << "ratio = " << z.convert_to<double>() / main << '\n';
      }
      emit(os.str(), output);
      return kOk;
    }

    if (*ex) {
      rmi::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = rmi::load_config(config_path);
      if (ex_name) cfg.name = *ex_name;
      if (ex_n) cfg.n = *ex_n;
      if (ex_grid) {
        cfg.d_grid.clear();
        for (double d : parse_list(*ex_grid)) {
          if (d < 1 || std::floor(d) != d) throw rmi::ConfigError("D values must be positive integers");
          cfg.d_grid.push_back(static_cast<std::uint64_t>(d));
        }
      }
      // A probability override replaces whatever form the config used.
      if (ex_p || ex_k || ex_c || ex_t) {
        cfg.p.reset();
        cfg.k.reset();
        cfg.c.reset();
        cfg.t.reset();
        cfg.p = ex_p;
        cfg.k = ex_k;
        cfg.c = ex_c;
        cfg.t = ex_t;
      }
      if (ex_eps) cfg.epsilon = *ex_eps;
      if (ex_trials) cfg.trials = *ex_trials;
      if (ex_seed) cfg.seed = *ex_seed;
      if (ex_threads) cfg.threads = *ex_threads;
      if (ex_mode) cfg.mode = *ex_mode;
      if (ex_guard) cfg.guard = *ex_guard;
      if (!jsonl_path.empty()) cfg.jsonl_path = jsonl_path;
      if (!csv_path.empty()) cfg.csv_path = csv_path;

      const auto result = rmi::run_experiment(cfg);
      if (!cfg.jsonl_path.empty()) {
        std::ofstream out(cfg.jsonl_path);
        if (!out) throw rmi::ConfigError("cannot write " + cfg.jsonl_path);
        rmi::write_jsonl(out, result);
      }
      if (!cfg.csv_path.empty()) {
        std::ofstream out(cfg.csv_path);
        if (!out) throw rmi::ConfigError("cannot write " + cfg.csv_path);
        rmi::write_csv(out, result);
      }
      std::ostringstream os;
      if (format == "csv") {
        rmi::write_csv(os, result);
      } else {
        rmi::write_report(os, result);
      }
      emit(os.str(), output);
      return result.violations.empty() ? kOk : kAssertion;
    }

    if (*svg) {
      const auto I = load_ideal(svg_input, svg_flags);
      rmi::RenderSpec spec;
      spec.levels = parse_list(levels);
      spec.axis_cap = axis_cap;
      spec.panel_size = panel;
      emit(rmi::render_staircase_svg(I, spec), output);
      return kOk;
    }
  } catch (const rmi::GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return kGuard;
  } catch (const rmi::InternalError& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kAssertion;
  } catch (const rmi::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
