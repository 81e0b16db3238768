// Thin binding: values cross as JSON text and are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rmi/divisor_count.hpp"
#include "rmi/errors.hpp"
#include "rmi/experiments.hpp"
#include "rmi/io.hpp"
#include "rmi/sampler.hpp"
#include "rmi/standard_pairs.hpp"
#include "rmi/svg.hpp"

namespace py = pybind11;

namespace {

rmi::PSpec pspec(std::optional<double> p, std::optional<double> k) {
  if (p.has_value() == k.has_value()) throw rmi::ConfigError("give exactly one of p or k");
  if (p) return rmi::ExplicitP{*p};
  return rmi::PowerK{*k};
}

std::string sample(std::size_t n, std::uint64_t D, std::optional<double> p, std::optional<double> k,
                   std::uint64_t seed, std::uint64_t trial) {
  rmi::ModelParams mp{n, D, pspec(p, k), seed};
  mp.validate();
  return rmi::io::sampled_to_json(rmi::sample_ideal(mp, trial), mp, trial).dump();
}

std::string census(const std::string& ideal_json, std::uint64_t guard, std::size_t cap) {
  rmi::CensusOptions opts;
  opts.guard = guard;
  opts.pair_cap = cap;
  return rmi::io::census_to_json(rmi::enumerate_standard_pairs(rmi::io::ideal_from_text(ideal_json), opts)).dump();
}

std::string zcount(std::size_t n, double d) { return rmi::to_string(rmi::z_count(n, d)); }

std::string svg(const std::string& ideal_json, std::vector<double> levels, std::uint64_t axis_cap) {
  rmi::RenderSpec spec;
  spec.levels = std::move(levels);
  spec.axis_cap = axis_cap;
  return rmi::render_staircase_svg(rmi::io::ideal_from_text(ideal_json), spec);
}

// Returns (jsonl without timing, csv).
std::pair<std::string, std::string> experiment(const std::string& config_json) {
  const auto cfg = rmi::config_from_json(rmi::Json::parse(config_json));
  rmi::ExperimentResult r;
  {
    py::gil_scoped_release release;
    r = rmi::run_experiment(cfg);
  }
  std::ostringstream j, c;
  rmi::write_jsonl(j, r, false);
  rmi::write_csv(c, r);
  return {j.str(), c.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = rmi::kVersion;

  auto base = py::register_exception<rmi::Error>(m, "RmiError", PyExc_RuntimeError);
  py::register_exception<rmi::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<rmi::GuardExceeded>(m, "GuardExceeded", base.ptr());

  m.def("sample", &sample, py::arg("n"), py::arg("max_degree"), py::arg("p") = py::none(),
        py::arg("k") = py::none(), py::arg("seed") = 0, py::arg("trial") = 0);
  m.def("census", &census, py::arg("ideal_json"), py::arg("guard") = rmi::kDefaultGuard,
        py::arg("cap") = 1'000'000);
  m.def("zcount", &zcount, py::arg("n"), py::arg("d"));
  m.def("staircase_svg", &svg, py::arg("ideal_json"), py::arg("levels") = std::vector<double>{},
        py::arg("axis_cap") = 0);
  m.def("experiment", &experiment, py::arg("config_json"));
}
