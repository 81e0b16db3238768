#include "doctest.h"

#include <sstream>

#include "rmi/errors.hpp"
#include "rmi/experiments.hpp"

using namespace rmi;

namespace {

std::string jsonl(const ExperimentResult& r) {
  std::ostringstream os;
  write_jsonl(os, r, false);
  return os.str();
}

std::string csv(const ExperimentResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

ExperimentConfig small(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.n = 2;
  cfg.d_grid = {30, 60};
  cfg.k = 0.5;
  cfg.trials = 12;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST_CASE("predicted dimension limit") {
  CHECK(predicted_dimension(3, 2, 2) == doctest::Approx(1.74742).epsilon(1e-5));
  CHECK(predicted_dimension(3, 1e9, 3) == doctest::Approx(2.0));
  CHECK(predicted_dimension(2, 1e-12, 1) == doctest::Approx(1.0));
}

TEST_CASE("config parsing") {
  const auto cfg = config_from_json(Json::parse(R"({"name":"band","n":2,"d_grid":[100],"k":0.5,"trials":3})"));
  CHECK(cfg.name == "band");
  CHECK(cfg.k == 0.5);
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"nme":"band"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"n":"two"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse("[1,2]")), ConfigError);

  auto bad = cfg;
  bad.d_grid.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.p = 0.3;
  CHECK_THROWS_AS(bad.validate(), ConfigError);  // two probability forms
  bad = cfg;
  bad.name = "dimension";
  CHECK_THROWS_AS(bad.validate(), ConfigError);  // needs c, t
  bad = cfg;
  bad.epsilon = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.name = "nonsense";
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // threads and output paths do not change the hash
  auto other = cfg;
  other.threads = 8;
  other.csv_path = "x.csv";
  CHECK(config_hash(other) == config_hash(cfg));
  other.seed = 99;
  CHECK(config_hash(other) != config_hash(cfg));
}

TEST_CASE("fractions") {
  Fraction f{"x", 9, 10};
  CHECK(f.value() == doctest::Approx(0.9));
  CHECK(f.se() == doctest::Approx(std::sqrt(0.09 / 10)));
  CHECK(Fraction{"y", 0, 0}.se() == 0);
}

TEST_CASE("every experiment kind runs and is thread-count independent") {
  std::vector<ExperimentConfig> cfgs = {small("band"), small("degree"), small("sp-region"), small("sp-count")};
  auto dim = small("dimension");
  dim.k.reset();
  dim.n = 3;
  dim.c = 2;
  dim.t = 2;
  cfgs.push_back(dim);
  auto deg3 = small("degree");
  deg3.n = 3;
  deg3.k = 1.5;
  deg3.epsilon = 0.3;
  cfgs.push_back(deg3);
  for (auto cfg : cfgs) {
    CAPTURE(cfg.name);
    cfg.threads = 1;
    const auto a = run_experiment(cfg);
    cfg.threads = 4;
    const auto b = run_experiment(cfg);
    CHECK(a.violations.empty());
    CHECK(a.checked_trials == cfg.trials * cfg.d_grid.size());
    CHECK(a.records.size() == cfg.trials * cfg.d_grid.size());
    CHECK(a.rows.size() == cfg.d_grid.size());
    CHECK(jsonl(a) == jsonl(b));
    CHECK(csv(a) == csv(b));
    for (const auto& row : a.rows) {
      for (const auto& f : row.fractions) {
        CHECK(f.value() >= 0);
        CHECK(f.value() <= 1);
      }
    }
  }
}

TEST_CASE("table replication") {
  ExperimentConfig cfg;
  cfg.name = "table1";
  const auto r = run_experiment(cfg);
  CHECK(r.violations.empty());
  REQUIRE(r.records.size() == 6);
  CHECK(r.records[0]["deg"] == 20);
  CHECK(r.records[4]["sp_by_dim"] == Json::parse("[2790,392,0,0]"));
  REQUIRE(r.verdicts.size() == 1);
  CHECK(r.verdicts[0].pass);

  cfg.mode = "sample";
  cfg.trials = 5;
  const auto s = run_experiment(cfg);
  CHECK(s.records.size() == 5);
  CHECK(s.violations.empty());
}

TEST_CASE("L asymptotics") {
  ExperimentConfig cfg;
  cfg.name = "L-asymptotics";
  cfg.region_dim = 1;
  cfg.f_grid = {10.5, 100.5, 0.5};
  cfg.h_rule = "const:0.5";
  const auto r = run_experiment(cfg);
  CHECK(r.records[0]["L"] == 10);  // ceil(f) - 1
  CHECK(r.records[1]["L"] == 100);
  CHECK(r.records[2]["L"] == 0);

  cfg.region_dim = 2;
  cfg.f_grid = {1e4};
  cfg.h_rule = "default";
  const auto r2 = run_experiment(cfg);
  const double ratio = r2.records[0]["ratio"].get<double>();
  CHECK(ratio > 0);
  CHECK(ratio <= 1);
}

TEST_CASE("structure checks catch inconsistent facts") {
  const auto I = minimalize({Monomial{2, 0}, Monomial{0, 3}}, 2);
  std::vector<std::string> v;
  check_structure(I, {0, 6, 6, {6, 0, 0}, {}}, v);
  CHECK(v.empty());
  check_structure(I, {0, 5, 6, {6, 1, 0}, {}}, v);
  CHECK(v.size() == 3);
}

TEST_CASE("sp-count zero regime and degenerate conditioning are reported") {
  auto cfg = small("sp-count");
  cfg.d_grid = {400};
  cfg.trials = 20;
  const auto r = run_experiment(cfg);
  bool saw_zero = false;
  for (const auto& f : r.rows[0].fractions) saw_zero = saw_zero || f.name.rfind("zero S=", 0) == 0;
  CHECK(saw_zero);

  auto deg = small("degree");
  deg.k = 2.5;  // s = 2 = n: no Z bounds, nothing conditioned
  const auto d = run_experiment(deg);
  CHECK(d.violations.empty());
}
