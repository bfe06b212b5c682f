#pragma once

#include <filesystem>
#include <string>

#include "tfmod/grid.hpp"

namespace tfmod::cli {

/// log10 |V| is clamped to [kHeatmapFloor, kHeatmapCeil] before coloring.
inline constexpr double kHeatmapFloor = -16.0;
inline constexpr double kHeatmapCeil = 0.0;

/// SVG raster of log10 |V| for a one-dimensional base grid: time runs left
/// to right and frequency bottom to top, both over symmetric representatives.
/// Throws Error(invalid_argument) when the base grid has d > 1.
std::string heatmap_svg(const PhaseSpaceSignal& v);

}  // namespace tfmod::cli
