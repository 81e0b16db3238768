#include "rmi/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "rmi/errors.hpp"
#include "rmi/staircase.hpp"

namespace rmi {

namespace {

constexpr int kSamples = 256;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double margin;
  double cell;
  double height;
  double cap;

  double px(double a) const { return margin + std::min(a, cap) * cell; }
  double py(double b) const { return height - margin - std::min(b, cap) * cell; }
  std::string pt(double a, double b) const { return fmt(px(a)) + "," + fmt(py(b)); }
};

std::string hyperbola_d(const Frame& fr, double c) {
  // x ranges over the part of the curve with 0 <= x, y <= cap.
  const double lo = std::max(0.0, c / (fr.cap + 1) - 1);
  const double hi = std::min(fr.cap, c - 1);
  if (!(c > 1) || lo > hi) return "";
  std::string d;
  for (int k = 0; k < kSamples; ++k) {
    const double x = lo + (hi - lo) * k / (kSamples - 1);
    const double y = std::clamp(c / (x + 1) - 1, 0.0, fr.cap);
    d += (k == 0 ? "M" : " L") + fmt(fr.px(x)) + "," + fmt(fr.py(y));
  }
  return d;
}

void axes(std::ostringstream& os, const Frame& fr) {
  os << "<line class=\"axis\" x1=\"" << fmt(fr.px(0)) << "\" y1=\"" << fmt(fr.py(0)) << "\" x2=\""
     << fmt(fr.px(fr.cap)) << "\" y2=\"" << fmt(fr.py(0)) << "\"/>\n";
  os << "<line class=\"axis\" x1=\"" << fmt(fr.px(0)) << "\" y1=\"" << fmt(fr.py(0)) << "\" x2=\""
     << fmt(fr.px(0)) << "\" y2=\"" << fmt(fr.py(fr.cap)) << "\"/>\n";
}

void staircase(std::ostringstream& os, const Frame& fr, const MonomialIdeal& ideal) {
  if (ideal.is_zero()) return;
  const auto corners = staircase_corners(ideal);
  const auto& out = corners.outer;
  const double cap = fr.cap;

  std::vector<std::string> steps;
  steps.push_back(fr.pt(static_cast<double>(out.front()[0]), cap));
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto a = static_cast<double>(out[j][0]);
    const auto b = static_cast<double>(out[j][1]);
    steps.push_back(fr.pt(a, b));
    const double next_a = j + 1 < out.size() ? static_cast<double>(out[j + 1][0]) : cap;
    steps.push_back(fr.pt(next_a, b));
  }
  std::string joined;
  for (const auto& s : steps) joined += (joined.empty() ? "" : " ") + s;

  os << "<polygon class=\"ideal\" points=\"" << joined << " " << fr.pt(cap, cap) << "\"/>\n";
  os << "<polyline class=\"staircase\" points=\"" << joined << "\"/>\n";
  for (const auto& g : out) {
    os << "<circle class=\"outer\" cx=\"" << fmt(fr.px(static_cast<double>(g[0]))) << "\" cy=\""
       << fmt(fr.py(static_cast<double>(g[1]))) << "\" r=\"3\"/>\n";
  }
  for (const auto& g : corners.inner) {
    os << "<circle class=\"inner\" cx=\"" << fmt(fr.px(static_cast<double>(g[0]))) << "\" cy=\""
       << fmt(fr.py(static_cast<double>(g[1]))) << "\" r=\"3\"/>\n";
  }
}

std::uint64_t default_cap(const MonomialIdeal& ideal) {
  std::uint64_t m = 0;
  for (const auto& g : ideal.generators()) {
    for (auto e : g.exponents()) m = std::max(m, e);
  }
  return std::max<std::uint64_t>(m + 2, 4);
}

const char* kStyle =
    "<style>.axis{stroke:#000;stroke-width:1}.ideal{fill:#d0d0d0;stroke:none}"
    ".staircase{fill:none;stroke:#000;stroke-width:1.5}.outer{fill:#000}"
    ".inner{fill:#fff;stroke:#000}.level{fill:none;stroke:#b03030;stroke-width:1}"
    ".label{font-family:sans-serif;font-size:12px}</style>\n";

}  // namespace

std::string render_staircase_svg(const MonomialIdeal& ideal, const RenderSpec& spec) {
  const std::size_t n = ideal.arity();
  if (n != 2 && n != 3) throw WrongArity("staircase figures need 2 or 3 variables");
  const std::uint64_t cap = spec.axis_cap ? spec.axis_cap : default_cap(ideal);
  const double cell =
      spec.cell > 0 ? spec.cell : (spec.panel_size - 2 * spec.margin) / static_cast<double>(cap);
  const double side = 2 * spec.margin + cell * static_cast<double>(cap);
  const std::size_t panels = n == 2 ? 1 : 3;
  const Frame fr{spec.margin, cell, side, static_cast<double>(cap)};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" width=\""
     << fmt(side * static_cast<double>(panels)) << "\" height=\"" << fmt(side) << "\">\n";
  os << kStyle;
  os << "<defs>\n";
  for (std::size_t l = 0; l < spec.levels.size(); ++l) {
    os << "<path id=\"level" << l << "\" class=\"level\" data-level=\"" << fmt(spec.levels[l])
       << "\" d=\"" << hyperbola_d(fr, spec.levels[l]) << "\"/>\n";
  }
  os << "</defs>\n";

  static constexpr std::pair<std::size_t, std::size_t> kPlanes[] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t k = 0; k < panels; ++k) {
    const auto [i, j] = n == 2 ? std::pair<std::size_t, std::size_t>{0, 1} : kPlanes[k];
    os << "<g transform=\"translate(" << fmt(side * static_cast<double>(k)) << ",0)\">\n";
    axes(os, fr);
    const Restriction r = restrict(ideal, VariableSet::of(n, {i, j}));
    if (r.is_unit()) {
      os << "<rect class=\"ideal\" x=\"" << fmt(fr.px(0)) << "\" y=\"" << fmt(fr.py(cap))
         << "\" width=\"" << fmt(cell * fr.cap) << "\" height=\"" << fmt(cell * fr.cap) << "\"/>\n";
    } else {
      staircase(os, fr, r.ideal());
    }
    for (std::size_t l = 0; l < spec.levels.size(); ++l) {
      os << "<use xlink:href=\"#level" << l << "\"/>\n";
    }
    os << "<text class=\"label\" x=\"" << fmt(fr.px(0)) << "\" y=\"" << fmt(spec.margin * 0.6)
       << "\">x" << i << ", x" << j << (r.is_unit() ? " (unit)" : "") << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rmi
