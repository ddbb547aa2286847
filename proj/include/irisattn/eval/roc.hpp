#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <limits>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"
#include "irisattn/eval/scores.hpp"

namespace irisattn::eval {

struct ComparisonScores {
  std::vector<double> genuine;
  std::vector<double> impostor;
};

/// The true-class softmax entry of every row is a genuine comparison score;
/// every other entry of the row is an impostor score.
inline ComparisonScores scores_to_comparisons(const ScoreMatrix& m, std::optional<std::size_t> split = {}) {
  ComparisonScores out;
  for (const auto& row : m.rows) {
    if (split && row.split != *split) continue;
    for (std::size_t c = 0; c < row.softmax.size(); ++c) {
      (c == row.label ? out.genuine : out.impostor).push_back(row.softmax[c]);
    }
  }
  return out;
}

struct RocPoint {
  double threshold;
  double fmr;   // impostor scores >= threshold
  double fnmr;  // genuine scores < threshold
};

struct RocCurve {
  std::vector<RocPoint> points;  // ascending threshold; last point is +inf
  double eer = 0.0;
  double eer_threshold = 0.0;  // interpolated between the bracketing thresholds
  double auc = 0.0;            // area under TPR = 1 - FNMR against FMR
};

/// Threshold sweep over every observed score plus +inf, with the equal error
/// rate linearly interpolated between the two thresholds that bracket the
/// FMR/FNMR crossing.
inline RocCurve roc_eer(std::vector<double> genuine, std::vector<double> impostor) {
  if (genuine.empty() || impostor.empty()) throw Error(ErrorCode::kContract, "genuine and impostor lists must be nonempty");
  std::sort(genuine.begin(), genuine.end());
  std::sort(impostor.begin(), impostor.end());
  std::vector<double> thresholds;
  thresholds.reserve(genuine.size() + impostor.size() + 1);
  std::merge(genuine.begin(), genuine.end(), impostor.begin(), impostor.end(), std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  const auto ng = static_cast<double>(genuine.size());
  const auto ni = static_cast<double>(impostor.size());
  RocCurve curve;
  curve.points.reserve(thresholds.size());
  std::size_t g_below = 0, i_below = 0;
  for (double t : thresholds) {
    while (g_below < genuine.size() && genuine[g_below] < t) ++g_below;
    while (i_below < impostor.size() && impostor[i_below] < t) ++i_below;
    curve.points.push_back({t, static_cast<double>(impostor.size() - i_below) / ni, static_cast<double>(g_below) / ng});
  }

  // FMR - FNMR starts at 1 on the lowest score and ends at -1 on +inf.
  const auto& pts = curve.points;
  std::size_t k = 0;
  while (pts[k].fmr - pts[k].fnmr > 0.0) ++k;
  if (k == 0 || pts[k].fmr == pts[k].fnmr) {
    curve.eer = pts[k].fmr;
    curve.eer_threshold = pts[k].threshold;
  } else {
    const RocPoint& a = pts[k - 1];
    const RocPoint& b = pts[k];
    const double da = a.fmr - a.fnmr;
    const double db = b.fmr - b.fnmr;
    const double alpha = da / (da - db);
    curve.eer = a.fmr + alpha * (b.fmr - a.fmr);
    curve.eer_threshold = std::isinf(b.threshold) ? a.threshold : a.threshold + alpha * (b.threshold - a.threshold);
  }

  // Points run from (FMR=1, TPR=1) down to (0, 0).
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double tpr0 = 1.0 - pts[i - 1].fnmr;
    const double tpr1 = 1.0 - pts[i].fnmr;
    area += (pts[i - 1].fmr - pts[i].fmr) * 0.5 * (tpr0 + tpr1);
  }
  curve.auc = area;
  return curve;
}

inline RocCurve roc_eer(const ComparisonScores& scores) { return roc_eer(scores.genuine, scores.impostor); }

struct SplitRoc {
  std::size_t split;
  RocCurve curve;
};

/// One curve per split that has rows.
inline std::vector<SplitRoc> roc_per_split(const ScoreMatrix& m) {
  std::vector<SplitRoc> out;
  for (std::size_t s = 0; s < m.splits; ++s) {
    auto scores = scores_to_comparisons(m, s);
    if (scores.genuine.empty()) continue;
    out.push_back({s, roc_eer(std::move(scores.genuine), std::move(scores.impostor))});
  }
  return out;
}

inline nlohmann::json to_json(const RocCurve& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points) {
    // JSON has no infinity; the sentinel threshold is written as null.
    nlohmann::json t = std::isinf(p.threshold) ? nlohmann::json(nullptr) : nlohmann::json(p.threshold);
    pts.push_back({{"threshold", t}, {"fmr", p.fmr}, {"fnmr", p.fnmr}});
  }
  return {{"eer", c.eer}, {"eer_threshold", c.eer_threshold}, {"auc", c.auc}, {"points", std::move(pts)}};
}

}  // namespace irisattn::eval
