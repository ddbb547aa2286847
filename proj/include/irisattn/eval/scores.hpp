#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"

namespace irisattn::eval {

inline constexpr double kSoftmaxTolerance = 1e-6;

struct ScoreRow {
  std::vector<double> softmax;
  std::size_t label = 0;
  std::size_t split = 0;
};

/// Closed-set classifier outputs: one softmax vector per test sample.
struct ScoreMatrix {
  std::size_t classes = 0;
  std::size_t splits = 1;
  std::vector<ScoreRow> rows;

  void validate() const {
    if (classes < 2) throw Error(ErrorCode::kDomain, "score matrix needs at least 2 classes");
    if (splits < 1) throw Error(ErrorCode::kDomain, "score matrix needs at least 1 split");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const std::string where = "row " + std::to_string(r) + ": ";
      if (row.softmax.size() != classes) {
        throw Error(ErrorCode::kFormat, where + "softmax has " + std::to_string(row.softmax.size()) +
                                            " entries, expected " + std::to_string(classes));
      }
      double total = 0.0;
      for (double p : row.softmax) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) throw Error(ErrorCode::kDomain, where + "softmax entry outside [0,1]");
        total += p;
      }
      if (std::abs(total - 1.0) > kSoftmaxTolerance) throw Error(ErrorCode::kDomain, where + "softmax does not sum to 1");
      if (row.label >= classes) throw Error(ErrorCode::kDomain, where + "label out of range");
      if (row.split >= splits) throw Error(ErrorCode::kDomain, where + "split out of range");
    }
  }
};

/// Index of the largest entry; ties go to the lowest class index.
inline std::size_t argmax(const std::vector<double>& v) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline ScoreMatrix score_matrix_from_json(const nlohmann::json& j) {
  ScoreMatrix m;
  try {
    m.classes = j.at("classes").get<std::size_t>();
    m.splits = j.contains("splits") ? j.at("splits").get<std::size_t>() : 1;
    for (const auto& r : j.at("rows")) {
      ScoreRow row;
      row.softmax = r.at("softmax").get<std::vector<double>>();
      row.label = r.at("label").get<std::size_t>();
      row.split = r.contains("split") ? r.at("split").get<std::size_t>() : 0;
      m.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("score matrix: ") + e.what());
  }
  m.validate();
  return m;
}

/// Score file: {"classes": C, "splits": S, "rows": [{"softmax": [...], "label": l, "split": s}, ...]}.
inline ScoreMatrix parse_score_matrix(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, std::string("score matrix: ") + e.what());
  }
  return score_matrix_from_json(j);
}

inline nlohmann::json to_json(const ScoreMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : m.rows) rows.push_back({{"softmax", r.softmax}, {"label", r.label}, {"split", r.split}});
  return {{"classes", m.classes}, {"splits", m.splits}, {"rows", std::move(rows)}};
}

}  // namespace irisattn::eval
