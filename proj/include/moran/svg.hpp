#pragma once

#include <string>
#include <vector>

#include "moran/experiments.hpp"

namespace moran {

// Scatter of adaptation rate (y) against ln N (x), one series per q value,
// one point per grid cell (mean over replicates) with one-standard-deviation
// error bars. Self-contained SVG, no rendering dependency.
std::string sweep_svg(const std::vector<SweepCell>& cells);

}  // namespace moran
