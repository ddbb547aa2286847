#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "irisattn/common/error.hpp"
#include "irisattn/common/numeric.hpp"

namespace irisattn::saliency {

/// Tolerance accepted on the sum of an input that claims to be normalized.
inline constexpr double kNormalizedInputTolerance = 1e-6;

/// Row-major W x H grid of nonnegative saliency values. When `normalized`
/// is set the values form a probability map over the image raster.
struct SaliencyGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;
  bool normalized = false;

  SaliencyGrid() = default;
  SaliencyGrid(std::size_t w, std::size_t h, double fill = 0.0)
      : width(w), height(h), values(w * h, fill) {
    if (w == 0 || h == 0) throw Error(ErrorCode::kShape, "grid dimensions must be >= 1");
  }
  SaliencyGrid(std::size_t w, std::size_t h, std::vector<double> v, bool norm = false)
      : width(w), height(h), values(std::move(v)), normalized(norm) {
    if (w == 0 || h == 0) throw Error(ErrorCode::kShape, "grid dimensions must be >= 1");
    if (values.size() != w * h) {
      throw Error(ErrorCode::kFormat, "expected " + std::to_string(w * h) + " values, got " +
                                          std::to_string(values.size()));
    }
  }

  double& at(std::size_t x, std::size_t y) { return values[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return values[y * width + x]; }

  std::size_t size() const noexcept { return values.size(); }
  double sum() const noexcept { return compensated_sum(values); }
  bool same_shape(const SaliencyGrid& other) const noexcept {
    return width == other.width && height == other.height;
  }
};

/// Throws a domain error on the first negative or non-finite value.
inline void validate_nonnegative(const SaliencyGrid& g) {
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double v = g.values[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kDomain, "grid value at index " + std::to_string(i) + " is " +
                                          std::to_string(v) + "; values must be finite and >= 0");
    }
  }
}

/// Divides every cell by the grid sum.
inline SaliencyGrid normalize_map(const SaliencyGrid& g) {
  validate_nonnegative(g);
  const double total = g.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::kDegenerateMap, "grid has no positive entry");
  SaliencyGrid out = g;
  for (double& v : out.values) v /= total;
  out.normalized = true;
  return out;
}

inline bool is_normalized(const SaliencyGrid& g, double tol = kNormalizedInputTolerance) {
  return std::abs(g.sum() - 1.0) <= tol;
}

}  // namespace irisattn::saliency
