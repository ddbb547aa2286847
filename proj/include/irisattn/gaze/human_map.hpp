#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "irisattn/common/error.hpp"
#include "irisattn/common/numeric.hpp"
#include "irisattn/gaze/types.hpp"
#include "irisattn/saliency/grid.hpp"

namespace irisattn::gaze {

/// Eye-tracker uncertainty on an HD screen, used as the Gaussian sigma.
inline constexpr double kDefaultSigmaScreenPx = 20.0;

/// Builds the human attention map p_e over the image raster.
///
/// Each fixation whose centroid maps inside the image deposits its duration
/// into the pixel containing it. The deposit field is convolved with an
/// isotropic Gaussian (sigma given in screen px, divided by the transform
/// scale), truncated at the image border and renormalized to sum to 1.
inline saliency::SaliencyGrid build_human_map(const std::vector<FixationEvent>& fixations,
                                              const ScreenToImageTransform& transform,
                                              double sigma_screen_px = kDefaultSigmaScreenPx) {
  transform.validate();
  if (!(sigma_screen_px > 0.0)) throw Error(ErrorCode::kDomain, "sigma must be > 0");
  const double sigma = sigma_screen_px / transform.scale;
  const std::size_t w = transform.width;
  const std::size_t h = transform.height;

  saliency::SaliencyGrid deposits(w, h, 0.0);
  bool any_inside = false;
  for (const auto& f : fixations) {
    const auto uv = transform.map_inside(f.cx, f.cy);
    if (!uv) continue;
    any_inside = true;
    const auto px = static_cast<std::size_t>(std::floor(uv->first));
    const auto py = static_cast<std::size_t>(std::floor(uv->second));
    deposits.at(px, py) += f.duration();
  }
  if (!any_inside) throw Error(ErrorCode::kEmptyMap, "no fixation falls inside the image");

  // Separable kernel sampled at integer offsets; its support covers the
  // whole image, so the only truncation is the image border.
  const std::size_t extent = std::max(w, h);
  std::vector<double> kernel(extent);
  for (std::size_t d = 0; d < extent; ++d) {
    const double z = static_cast<double>(d) / sigma;
    kernel[d] = std::exp(-0.5 * z * z);
  }
  auto k = [&](std::size_t a, std::size_t b) { return kernel[a > b ? a - b : b - a]; };

  // Horizontal pass, then vertical pass.
  saliency::SaliencyGrid rows(w, h, 0.0);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t sx = 0; sx < w; ++sx) {
      const double m = deposits.at(sx, y);
      if (m == 0.0) continue;
      for (std::size_t x = 0; x < w; ++x) rows.at(x, y) += m * k(x, sx);
    }
  }
  saliency::SaliencyGrid field(w, h, 0.0);
  for (std::size_t sy = 0; sy < h; ++sy) {
    bool row_empty = true;
    for (std::size_t x = 0; x < w && row_empty; ++x) row_empty = rows.at(x, sy) == 0.0;
    if (row_empty) continue;
    for (std::size_t y = 0; y < h; ++y) {
      const double ky = k(y, sy);
      for (std::size_t x = 0; x < w; ++x) field.at(x, y) += rows.at(x, sy) * ky;
    }
  }
  if (!(field.sum() > 0.0)) throw Error(ErrorCode::kEmptyMap, "fixations inside the image carry no duration");
  return saliency::normalize_map(field);
}

}  // namespace irisattn::gaze
