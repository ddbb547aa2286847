#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"
#include "irisattn/common/numeric.hpp"

namespace irisattn::eval {

enum class Verdict { kGenuine, kImpostor };

inline std::string_view to_string(Verdict v) { return v == Verdict::kGenuine ? "genuine" : "impostor"; }

inline std::optional<Verdict> parse_verdict(std::string_view s) {
  if (s == "genuine") return Verdict::kGenuine;
  if (s == "impostor") return Verdict::kImpostor;
  return std::nullopt;
}

inline constexpr std::string_view kMachineSource = "machine";
inline constexpr std::string_view kHumanSourcePrefix = "human:";

inline std::string human_source(std::string_view subject_id) {
  return std::string(kHumanSourcePrefix) + std::string(subject_id);
}

inline bool is_human_source(std::string_view source) { return source.starts_with(kHumanSourcePrefix); }

/// One genuine/impostor verdict on an iris pair by a human or the machine.
struct DecisionRecord {
  std::string pair_id;
  std::string source;  // "machine" or "human:<subject id>"
  Verdict verdict = Verdict::kGenuine;
  Verdict ground_truth = Verdict::kGenuine;
  std::int64_t pmi_days = 0;
  double elapsed_ms = 0.0;

  bool correct() const noexcept { return verdict == ground_truth; }
};

inline nlohmann::json to_json(const DecisionRecord& r) {
  return {{"pair_id", r.pair_id},   {"source", r.source},
          {"verdict", to_string(r.verdict)}, {"ground_truth", to_string(r.ground_truth)},
          {"pmi_days", r.pmi_days}, {"elapsed_ms", r.elapsed_ms}};
}

/// Reads a DecisionRecord out of a JSON object; throws Error on bad fields.
inline DecisionRecord decision_from_json(const nlohmann::json& j) {
  DecisionRecord r;
  try {
    r.pair_id = j.at("pair_id").get<std::string>();
    r.source = j.at("source").get<std::string>();
    const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
    const auto truth = parse_verdict(j.at("ground_truth").get<std::string>());
    if (!verdict || !truth) throw Error(ErrorCode::kDomain, "verdict and ground_truth must be genuine or impostor");
    r.verdict = *verdict;
    r.ground_truth = *truth;
    r.pmi_days = j.at("pmi_days").get<std::int64_t>();
    r.elapsed_ms = j.contains("elapsed_ms") ? j.at("elapsed_ms").get<double>() : 0.0;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, e.what());
  }
  if (r.pmi_days < 0) throw Error(ErrorCode::kDomain, "pmi_days must be >= 0");
  if (r.source != kMachineSource && !(is_human_source(r.source) && r.source.size() > kHumanSourcePrefix.size())) {
    throw Error(ErrorCode::kDomain, "source must be 'machine' or 'human:<id>', got '" + r.source + "'");
  }
  return r;
}

/// Reads a line-delimited decision log. Each nonblank line is a JSON object;
/// lines carrying an "event" field other than "decision" (session events
/// from the experiment log) are skipped. A final line without a newline is
/// treated as a torn write and ignored.
inline std::vector<DecisionRecord> parse_decision_log(std::string_view text) {
  std::vector<DecisionRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    ++line_no;
    if (nl == std::string_view::npos) break;
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "record must be an object");
    if (j.contains("event") && j["event"] != "decision") continue;
    try {
      out.push_back(decision_from_json(j));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

inline std::string format_decision_log(const std::vector<DecisionRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + '\n';
  return out;
}

}  // namespace irisattn::eval
