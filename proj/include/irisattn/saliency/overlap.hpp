#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "irisattn/common/error.hpp"
#include "irisattn/common/numeric.hpp"
#include "irisattn/saliency/grid.hpp"

namespace irisattn::saliency {

struct OverlapReport {
  std::string pair_id;
  double q = 0.0;
  SaliencyGrid agreement;  // per-cell sqrt(p_c * p_e), unnormalized
};

/// Overlap of two probability maps: q = sum over cells of sqrt(pc * pe).
/// This is the Bhattacharyya coefficient of the two distributions, so q is
/// 1 for identical maps and 0 for maps with disjoint support.
inline OverlapReport overlap_q(const SaliencyGrid& pc, const SaliencyGrid& pe, std::string pair_id = {}) {
  if (!pc.same_shape(pe)) {
    throw Error(ErrorCode::kShape, "machine map is " + std::to_string(pc.width) + "x" + std::to_string(pc.height) +
                                       ", human map is " + std::to_string(pe.width) + "x" +
                                       std::to_string(pe.height));
  }
  validate_nonnegative(pc);
  validate_nonnegative(pe);
  if (!is_normalized(pc)) throw Error(ErrorCode::kContract, "machine map is not normalized");
  if (!is_normalized(pe)) throw Error(ErrorCode::kContract, "human map is not normalized");

  OverlapReport report;
  report.pair_id = std::move(pair_id);
  report.agreement = SaliencyGrid(pc.width, pc.height, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < pc.values.size(); ++i) {
    const double term = std::sqrt(pc.values[i] * pe.values[i]);
    report.agreement.values[i] = term;
    acc.add(term);
  }
  // Inputs are only normalized to within tolerance; keep q inside its range.
  report.q = std::clamp(acc.value(), 0.0, 1.0);
  return report;
}

/// Per-image overlap for a displayed pair. The mean is reported only when
/// both sides are present.
struct PairOverlap {
  std::string pair_id;
  std::optional<double> left;
  std::optional<double> right;

  std::optional<double> mean() const {
    if (left && right) return 0.5 * (*left + *right);
    return std::nullopt;
  }
};

}  // namespace irisattn::saliency
