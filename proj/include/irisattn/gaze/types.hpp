#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "irisattn/common/error.hpp"

namespace irisattn::gaze {

struct GazeSample {
  double t_ms = 0.0;
  double x = 0.0;
  double y = 0.0;
  bool valid = true;
};

struct FixationEvent {
  double t_start = 0.0;
  double t_end = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double dispersion = 0.0;
  std::size_t sample_count = 0;

  double duration() const noexcept { return t_end - t_start; }
};

struct FixationCluster {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  std::size_t member_count = 0;
  double total_duration = 0.0;
};

/// Placement of one displayed image on screen: image pixel (u, v) is shown
/// at screen (offset_x + scale * u, offset_y + scale * v).
struct ScreenToImageTransform {
  double offset_x = 0.0;
  double offset_y = 0.0;
  double scale = 1.0;  // screen px per image px
  std::size_t width = 0;
  std::size_t height = 0;

  void validate() const {
    if (!(scale > 0.0)) throw Error(ErrorCode::kDomain, "transform scale must be > 0");
    if (width == 0 || height == 0) throw Error(ErrorCode::kDomain, "transform image size must be >= 1");
  }

  std::pair<double, double> to_image(double sx, double sy) const noexcept {
    return {(sx - offset_x) / scale, (sy - offset_y) / scale};
  }

  std::pair<double, double> to_screen(double u, double v) const noexcept {
    return {offset_x + scale * u, offset_y + scale * v};
  }

  bool contains(double u, double v) const noexcept {
    return u >= 0.0 && v >= 0.0 && u < static_cast<double>(width) && v < static_cast<double>(height);
  }

  /// Image coordinates of a screen point, or nullopt when it falls off the image.
  std::optional<std::pair<double, double>> map_inside(double sx, double sy) const noexcept {
    auto uv = to_image(sx, sy);
    if (!contains(uv.first, uv.second)) return std::nullopt;
    return uv;
  }
};

}  // namespace irisattn::gaze
