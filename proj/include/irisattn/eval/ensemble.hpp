#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irisattn/common/error.hpp"
#include "irisattn/eval/decisions.hpp"

namespace irisattn::eval {

/// Selects whose verdict takes part in an ensemble. Either an exact source
/// ("machine", "human:A") or a positional human slot "human#k" (1-based),
/// meaning the k-th distinct human source to judge the pair in log order.
/// Positional slots express "two humans per pair, not necessarily the same".
/// The shorthand "humanA" names the source "human:A".
struct MemberSelector {
  std::string exact;
  std::size_t human_slot = 0;  // 0 when `exact` is used

  static MemberSelector parse(std::string_view token) {
    constexpr std::string_view kSlot = "human#";
    if (token.starts_with(kSlot)) {
      std::size_t k = 0;
      const auto digits = token.substr(kSlot.size());
      const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec != std::errc{} || p != digits.data() + digits.size() || k == 0) {
        throw Error(ErrorCode::kDomain, "bad member slot '" + std::string(token) + "'");
      }
      return {{}, k};
    }
    if (token.empty()) throw Error(ErrorCode::kDomain, "empty member name");
    constexpr std::string_view kHuman = "human";
    if (token.starts_with(kHuman) && token.size() > kHuman.size() && token[kHuman.size()] != ':') {
      return {human_source(token.substr(kHuman.size())), 0};
    }
    return {std::string(token), 0};
  }

  std::string name() const { return human_slot ? "human#" + std::to_string(human_slot) : exact; }
};

inline std::vector<MemberSelector> parse_members(std::string_view csv) {
  std::vector<MemberSelector> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto token = csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(MemberSelector::parse(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct EnsembleVerdict {
  std::string pair_id;
  Verdict verdict = Verdict::kImpostor;
  Verdict ground_truth = Verdict::kImpostor;
  std::int64_t pmi_days = 0;
  std::vector<Verdict> member_verdicts;  // in member order
};

/// Per-pair verdicts grouped by member, preserving log order.
struct PairGroup {
  Verdict ground_truth = Verdict::kImpostor;
  std::int64_t pmi_days = 0;
  std::vector<const DecisionRecord*> records;
};

inline std::map<std::string, PairGroup> group_by_pair(const std::vector<DecisionRecord>& records) {
  std::map<std::string, PairGroup> groups;
  for (const auto& r : records) {
    auto [it, inserted] = groups.try_emplace(r.pair_id);
    if (inserted) {
      it->second.ground_truth = r.ground_truth;
      it->second.pmi_days = r.pmi_days;
    } else if (it->second.ground_truth != r.ground_truth) {
      throw Error(ErrorCode::kDomain, "pair " + r.pair_id + " has conflicting ground truth");
    }
    it->second.records.push_back(&r);
  }
  return groups;
}

/// A member's verdict on a pair; a member that answered a pair more than
/// once is OR-ed with itself.
inline std::optional<Verdict> member_verdict(const PairGroup& group, const MemberSelector& member) {
  std::string source = member.exact;
  if (member.human_slot) {
    std::vector<std::string_view> humans;
    for (const auto* r : group.records) {
      if (is_human_source(r->source) && std::find(humans.begin(), humans.end(), r->source) == humans.end()) {
        humans.push_back(r->source);
      }
    }
    if (humans.size() < member.human_slot) return std::nullopt;
    source = std::string(humans[member.human_slot - 1]);
  }
  std::optional<Verdict> out;
  for (const auto* r : group.records) {
    if (r->source != source) continue;
    if (!out || r->verdict == Verdict::kGenuine) out = r->verdict;
  }
  return out;
}

/// OR rule: a pair is genuine if any member calls it genuine. Every pair in
/// `records` must have a verdict from every member. Output is sorted by pair id.
inline std::vector<EnsembleVerdict> ensemble_or(const std::vector<DecisionRecord>& records,
                                                const std::vector<MemberSelector>& members) {
  if (members.empty()) throw Error(ErrorCode::kContract, "ensemble needs at least one member");
  const auto groups = group_by_pair(records);
  std::vector<EnsembleVerdict> out;
  std::string missing;
  for (const auto& [pair_id, group] : groups) {
    EnsembleVerdict ev{pair_id, Verdict::kImpostor, group.ground_truth, group.pmi_days, {}};
    for (const auto& m : members) {
      const auto v = member_verdict(group, m);
      if (!v) {
        missing += (missing.empty() ? "" : ", ") + pair_id + " (" + m.name() + ")";
        continue;
      }
      ev.member_verdicts.push_back(*v);
      if (*v == Verdict::kGenuine) ev.verdict = Verdict::kGenuine;
    }
    out.push_back(std::move(ev));
  }
  if (!missing.empty()) throw Error(ErrorCode::kIncompleteGroup, "missing member verdicts: " + missing);
  return out;
}

inline std::optional<double> ensemble_accuracy(const std::vector<EnsembleVerdict>& verdicts) {
  if (verdicts.empty()) return std::nullopt;
  std::size_t correct = 0;
  for (const auto& v : verdicts) correct += v.verdict == v.ground_truth;
  return static_cast<double>(correct) / static_cast<double>(verdicts.size());
}

/// Accuracy of one member over the pairs it judged.
inline std::optional<double> member_accuracy(const std::vector<DecisionRecord>& records, const MemberSelector& member) {
  std::size_t correct = 0, total = 0;
  for (const auto& [pair_id, group] : group_by_pair(records)) {
    const auto v = member_verdict(group, member);
    if (!v) continue;
    ++total;
    correct += *v == group.ground_truth;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

/// Ensemble verdicts as decision records, so they can be bucketed alongside members.
inline std::vector<DecisionRecord> as_records(const std::vector<EnsembleVerdict>& verdicts, std::string source) {
  std::vector<DecisionRecord> out;
  for (const auto& v : verdicts) out.push_back({v.pair_id, source, v.verdict, v.ground_truth, v.pmi_days, 0.0});
  return out;
}

}  // namespace irisattn::eval
