#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "irisattn/common/error.hpp"
#include "irisattn/eval/decisions.hpp"

namespace irisattn::eval {

/// Half-open day interval [lo, hi); hi absent means unbounded.
struct PmiBucket {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;

  bool contains(std::int64_t days) const noexcept { return days >= lo && (!hi || days < *hi); }

  std::string label() const {
    if (hi && *hi == lo + 1) return std::to_string(lo);
    return "[" + std::to_string(lo) + "," + (hi ? std::to_string(*hi) + ")" : "inf)");
  }
};

/// Edges e1 < e2 < ... < ek give [0,e1), [e1,e2), ..., [ek,inf). With no
/// edges, every distinct PMI in the records becomes its own bucket, which
/// follows the acquisition sessions present in the data.
inline std::vector<PmiBucket> make_buckets(std::vector<std::int64_t> edges, const std::vector<DecisionRecord>& records) {
  std::vector<PmiBucket> buckets;
  if (edges.empty()) {
    std::set<std::int64_t> days;
    for (const auto& r : records) days.insert(r.pmi_days);
    for (auto d : days) buckets.push_back({d, d + 1});
    return buckets;
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.front() < 0) throw Error(ErrorCode::kDomain, "bucket edges must be >= 0");
  std::int64_t lo = 0;
  for (auto e : edges) {
    if (e > lo) buckets.push_back({lo, e});
    lo = e;
  }
  buckets.push_back({lo, std::nullopt});
  return buckets;
}

struct PmiAccuracy {
  std::string source;
  PmiBucket bucket;
  std::size_t correct = 0;
  std::size_t total = 0;

  double accuracy() const { return static_cast<double>(correct) / static_cast<double>(total); }
};

/// Accuracy per (source, bucket). Buckets a source never hit are absent
/// rather than reported as zero. Ordered by source, then bucket.
inline std::vector<PmiAccuracy> accuracy_by_pmi(const std::vector<DecisionRecord>& records,
                                                const std::vector<PmiBucket>& buckets) {
  std::map<std::string, std::vector<PmiAccuracy>> by_source;
  for (const auto& r : records) {
    auto& rows = by_source[r.source];
    if (rows.empty()) {
      for (const auto& b : buckets) rows.push_back({r.source, b, 0, 0});
    }
    for (auto& row : rows) {
      if (!row.bucket.contains(r.pmi_days)) continue;
      ++row.total;
      row.correct += r.correct();
      break;
    }
  }
  std::vector<PmiAccuracy> out;
  for (auto& [source, rows] : by_source) {
    for (auto& row : rows) {
      if (row.total > 0) out.push_back(row);
    }
  }
  return out;
}

inline std::vector<PmiAccuracy> accuracy_by_pmi(const std::vector<DecisionRecord>& records,
                                                std::vector<std::int64_t> edges = {}) {
  return accuracy_by_pmi(records, make_buckets(std::move(edges), records));
}

}  // namespace irisattn::eval
