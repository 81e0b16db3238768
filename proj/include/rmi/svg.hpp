#pragma once

// Staircase figures. Lattice point (a, b) is drawn at
// (margin + a * cell, height - margin - b * cell). Each requested hyperbola
// level c is one <path> tracing (x + 1)(y + 1) = c at 256 samples, clipped to
// [0, axis_cap]^2. Three-variable ideals are drawn as their three
// two-variable restrictions side by side, sharing the hyperbola paths.

#include <cstdint>
#include <string>
#include <vector>

#include "rmi/ideal.hpp"

namespace rmi {

struct RenderSpec {
  std::vector<double> levels;
  double cell = 0;             // 0: fit axis_cap into the panel
  std::uint64_t axis_cap = 0;  // 0: derived from the generators
  double panel_size = 420;
  double margin = 30;
};

// Throws WrongArity unless n is 2 or 3.
std::string render_staircase_svg(const MonomialIdeal& ideal, const RenderSpec& spec);

}  // namespace rmi
