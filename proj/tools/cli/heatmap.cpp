#include "cli/heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "tfmod/error.hpp"

namespace tfmod::cli {

namespace {

// viridis, sampled at nine evenly spaced stops
constexpr std::array<std::array<double, 3>, 9> kStops{{{68, 1, 84},
                                                      {71, 44, 122},
                                                      {59, 81, 139},
                                                      {44, 113, 142},
                                                      {33, 144, 141},
                                                      {39, 173, 129},
                                                      {92, 200, 99},
                                                      {170, 220, 50},
                                                      {253, 231, 37}}};

std::string color(double t) {
  t = std::clamp(t, 0.0, 1.0) * (kStops.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(t), kStops.size() - 2);
  const double u = t - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(kStops[i][c] + u * (kStops[i + 1][c] - kStops[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

std::string heatmap_svg(const PhaseSpaceSignal& v) {
  const GridSpec& base = v.base();
  if (base.dim() != 1) throw Error(ErrorCode::invalid_argument, "heatmaps are only drawn for one-dimensional signals");
  const std::size_t n = base.n(0);
  const std::size_t cell = std::max<std::size_t>(2, 512 / n);
  const std::size_t side = cell * n;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(side) + "\" height=\"" +
         std::to_string(side) + "\" viewBox=\"0 0 " + std::to_string(side) + " " + std::to_string(side) +
         "\" shape-rendering=\"crispEdges\">\n";
  out += "<title>log10 |V| on [" + std::to_string(static_cast<int>(kHeatmapFloor)) + ", " +
         std::to_string(static_cast<int>(kHeatmapCeil)) + "]</title>\n";
  const auto half = static_cast<std::int64_t>(n / 2);
  for (std::size_t row = 0; row < n; ++row) {
    // top row is the highest frequency representative
    const std::int64_t xi = static_cast<std::int64_t>(n) - 1 - static_cast<std::int64_t>(row) - half;
    for (std::size_t col = 0; col < n; ++col) {
      const std::int64_t x = static_cast<std::int64_t>(col) - half;
      const double mag = std::abs(v(static_cast<std::size_t>(wrap_index(x, n)), static_cast<std::size_t>(wrap_index(xi, n))));
      const double level = std::log10(std::max(mag, 1e-16));
      const double t = (std::clamp(level, kHeatmapFloor, kHeatmapCeil) - kHeatmapFloor) / (kHeatmapCeil - kHeatmapFloor);
      out += "<rect x=\"" + std::to_string(col * cell) + "\" y=\"" + std::to_string(row * cell) + "\" width=\"" +
             std::to_string(cell) + "\" height=\"" + std::to_string(cell) + "\" fill=\"" + color(t) + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tfmod::cli
