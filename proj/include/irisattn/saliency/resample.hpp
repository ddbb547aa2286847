#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "irisattn/common/error.hpp"
#include "irisattn/saliency/grid.hpp"

namespace irisattn::saliency {

/// Bilinear resampling with cell-center alignment: output cell i samples the
/// input at (i + 0.5) * W / W' - 0.5, clamped to the input's cell centers.
/// A normalized input is renormalized after resampling.
inline SaliencyGrid resample_grid(const SaliencyGrid& g, std::size_t out_w, std::size_t out_h) {
  if (out_w == 0 || out_h == 0) throw Error(ErrorCode::kShape, "target dimensions must be >= 1");
  if (g.width == out_w && g.height == out_h) return g;

  auto source_coord = [](std::size_t i, std::size_t in, std::size_t out) {
    const double s = (static_cast<double>(i) + 0.5) * static_cast<double>(in) / static_cast<double>(out) - 0.5;
    return std::clamp(s, 0.0, static_cast<double>(in - 1));
  };

  SaliencyGrid out(out_w, out_h, 0.0);
  for (std::size_t y = 0; y < out_h; ++y) {
    const double sy = source_coord(y, g.height, out_h);
    const auto y0 = static_cast<std::size_t>(std::floor(sy));
    const std::size_t y1 = std::min(y0 + 1, g.height - 1);
    const double fy = sy - static_cast<double>(y0);
    for (std::size_t x = 0; x < out_w; ++x) {
      const double sx = source_coord(x, g.width, out_w);
      const auto x0 = static_cast<std::size_t>(std::floor(sx));
      const std::size_t x1 = std::min(x0 + 1, g.width - 1);
      const double fx = sx - static_cast<double>(x0);
      const double top = g.at(x0, y0) + fx * (g.at(x1, y0) - g.at(x0, y0));
      const double bottom = g.at(x0, y1) + fx * (g.at(x1, y1) - g.at(x0, y1));
      // Lerp of nonnegative values can dip below zero only by rounding.
      out.at(x, y) = std::max(0.0, top + fy * (bottom - top));
    }
  }
  if (g.normalized) return normalize_map(out);
  return out;
}

}  // namespace irisattn::saliency
