#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"
#include "irisattn/eval/decisions.hpp"
#include "irisattn/gaze/transform_io.hpp"

namespace irisattn::experiment {

using eval::Verdict;

/// One scheduled iris-image comparison with its ground truth.
struct PairSpec {
  std::string pair_id;
  std::string left_image;  // opaque reference relative to the data root
  std::string right_image;
  std::string left_eye;  // eye identity, used only to check ground truth
  std::string right_eye;
  Verdict ground_truth = Verdict::kGenuine;
  std::int64_t left_pmi_days = 0;
  std::int64_t right_pmi_days = 0;
  std::optional<gaze::ScreenToImageTransform> left_transform;
  std::optional<gaze::ScreenToImageTransform> right_transform;

  /// PMI attached to decisions on this pair: the later of the two images.
  std::int64_t pmi_days() const noexcept { return std::max(left_pmi_days, right_pmi_days); }

  void validate() const {
    if (pair_id.empty()) throw Error(ErrorCode::kDomain, "pair id must be nonempty");
    if (left_pmi_days < 0 || right_pmi_days < 0) throw Error(ErrorCode::kDomain, "pair " + pair_id + ": negative pmi");
    const bool same_eye = left_eye == right_eye;
    if ((ground_truth == Verdict::kGenuine) != same_eye) {
      throw Error(ErrorCode::kDomain, "pair " + pair_id + ": ground truth disagrees with eye identities");
    }
  }
};

inline PairSpec pair_from_json(const nlohmann::json& j) {
  PairSpec p;
  try {
    p.pair_id = j.at("pair_id").get<std::string>();
    p.left_image = j.at("left_image").get<std::string>();
    p.right_image = j.at("right_image").get<std::string>();
    p.left_eye = j.at("left_eye").get<std::string>();
    p.right_eye = j.at("right_eye").get<std::string>();
    const auto truth = eval::parse_verdict(j.at("ground_truth").get<std::string>());
    if (!truth) throw Error(ErrorCode::kDomain, "ground_truth must be genuine or impostor");
    p.ground_truth = *truth;
    p.left_pmi_days = j.at("left_pmi_days").get<std::int64_t>();
    p.right_pmi_days = j.at("right_pmi_days").get<std::int64_t>();
    if (j.contains("left_transform")) p.left_transform = gaze::transform_from_json(j["left_transform"]);
    if (j.contains("right_transform")) p.right_transform = gaze::transform_from_json(j["right_transform"]);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("pair spec: ") + e.what());
  }
  p.validate();
  return p;
}

inline nlohmann::json to_json(const PairSpec& p) {
  nlohmann::json j = {{"pair_id", p.pair_id},
                      {"left_image", p.left_image},
                      {"right_image", p.right_image},
                      {"left_eye", p.left_eye},
                      {"right_eye", p.right_eye},
                      {"ground_truth", eval::to_string(p.ground_truth)},
                      {"left_pmi_days", p.left_pmi_days},
                      {"right_pmi_days", p.right_pmi_days}};
  if (p.left_transform) j["left_transform"] = gaze::to_json(*p.left_transform);
  if (p.right_transform) j["right_transform"] = gaze::to_json(*p.right_transform);
  return j;
}

/// What an examiner's client may see: no ground truth, no eye identities.
inline nlohmann::json public_view(const PairSpec& p) {
  nlohmann::json j = {{"pair_id", p.pair_id},
                      {"left_image", "/pairs/" + p.pair_id + "/images/left"},
                      {"right_image", "/pairs/" + p.pair_id + "/images/right"}};
  if (p.left_transform) j["left_transform"] = gaze::to_json(*p.left_transform);
  if (p.right_transform) j["right_transform"] = gaze::to_json(*p.right_transform);
  return j;
}

/// Pool file: a JSON array of pair specs. Pair ids must be unique.
inline std::vector<PairSpec> parse_pair_pool(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, std::string("pair pool: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::kFormat, "pair pool must be an array");
  std::vector<PairSpec> pool;
  for (const auto& item : j) pool.push_back(pair_from_json(item));
  std::vector<std::string> ids;
  for (const auto& p : pool) ids.push_back(p.pair_id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw Error(ErrorCode::kDomain, "duplicate pair id in pool");
  return pool;
}

}  // namespace irisattn::experiment
