#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irisattn/eval/scores.hpp"

namespace irisattn::eval {

struct AccuracyReport {
  std::vector<std::optional<double>> per_split;  // absent for splits with no rows
  std::optional<double> mean;                    // over nonempty splits
  std::vector<std::string> warnings;
};

/// Fraction of rows per split whose argmax is the true label.
inline AccuracyReport classification_accuracy(const ScoreMatrix& m) {
  if (m.rows.empty()) throw Error(ErrorCode::kContract, "score matrix is empty");
  std::vector<std::size_t> correct(m.splits, 0), total(m.splits, 0);
  for (const auto& row : m.rows) {
    ++total[row.split];
    if (argmax(row.softmax) == row.label) ++correct[row.split];
  }
  AccuracyReport report;
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t s = 0; s < m.splits; ++s) {
    if (total[s] == 0) {
      report.per_split.emplace_back();
      report.warnings.push_back("split " + std::to_string(s) + " has no rows; excluded from mean");
      continue;
    }
    const double acc = static_cast<double>(correct[s]) / static_cast<double>(total[s]);
    report.per_split.emplace_back(acc);
    sum += acc;
    ++used;
  }
  if (used > 0) report.mean = sum / static_cast<double>(used);
  return report;
}

}  // namespace irisattn::eval
