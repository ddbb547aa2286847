#pragma once

#include <string>

#include "irisattn/saliency/grid.hpp"
#include "irisattn/saliency/overlap.hpp"
#include "irisattn/saliency/resample.hpp"

namespace irisattn::saliency {

/// Brings a raw machine map onto the human map's raster (the iris image
/// raster), normalizes both and computes their overlap.
inline OverlapReport compare_maps(const SaliencyGrid& cam, const SaliencyGrid& human, std::string pair_id = {}) {
  SaliencyGrid pc = normalize_map(cam);
  pc = resample_grid(pc, human.width, human.height);
  const SaliencyGrid pe = human.normalized && is_normalized(human) ? human : normalize_map(human);
  return overlap_q(pc, pe, std::move(pair_id));
}

}  // namespace irisattn::saliency
