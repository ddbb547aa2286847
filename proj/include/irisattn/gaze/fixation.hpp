#pragma once

#include <algorithm>
#include <vector>

#include "irisattn/gaze/types.hpp"

namespace irisattn::gaze {

struct FixationConfig {
  double dispersion_px = 40.0;
  double min_duration_ms = 100.0;
};

namespace detail {

struct Bounds {
  double min_x, max_x, min_y, max_y;

  explicit Bounds(const GazeSample& s) : min_x(s.x), max_x(s.x), min_y(s.y), max_y(s.y) {}

  void extend(const GazeSample& s) noexcept {
    min_x = std::min(min_x, s.x);
    max_x = std::max(max_x, s.x);
    min_y = std::min(min_y, s.y);
    max_y = std::max(max_y, s.y);
  }

  double dispersion() const noexcept { return (max_x - min_x) + (max_y - min_y); }
};

}  // namespace detail

/// Dispersion-threshold (I-DT) fixation detection.
///
/// Invalid samples are dropped first. Starting at each candidate sample the
/// smallest window spanning at least `min_duration_ms` is tested; if its
/// dispersion (x range + y range) is within the threshold it is grown one
/// sample at a time for as long as the bound holds, emitted as a fixation,
/// and scanning resumes after it. Otherwise the window start advances by one.
inline std::vector<FixationEvent> detect_fixations(const std::vector<GazeSample>& samples,
                                                   const FixationConfig& cfg = {}) {
  std::vector<GazeSample> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.valid) pts.push_back(s);
  }
  std::vector<FixationEvent> out;
  if (pts.size() < 2) return out;

  const std::size_t n = pts.size();
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive; kept >= start
  while (start < n) {
    end = std::max(end, start);
    while (end < n && pts[end].t_ms - pts[start].t_ms < cfg.min_duration_ms) ++end;
    if (end >= n) break;

    detail::Bounds box(pts[start]);
    for (std::size_t i = start + 1; i <= end; ++i) box.extend(pts[i]);
    if (box.dispersion() > cfg.dispersion_px) {
      ++start;
      continue;
    }
    while (end + 1 < n) {
      detail::Bounds grown = box;
      grown.extend(pts[end + 1]);
      if (grown.dispersion() > cfg.dispersion_px) break;
      box = grown;
      ++end;
    }

    FixationEvent fx;
    fx.t_start = pts[start].t_ms;
    fx.t_end = pts[end].t_ms;
    fx.dispersion = box.dispersion();
    fx.sample_count = end - start + 1;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = start; i <= end; ++i) {
      sx += pts[i].x;
      sy += pts[i].y;
    }
    fx.cx = sx / static_cast<double>(fx.sample_count);
    fx.cy = sy / static_cast<double>(fx.sample_count);
    out.push_back(fx);

    start = end + 1;
  }
  return out;
}

}  // namespace irisattn::gaze
