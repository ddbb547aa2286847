#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"
#include "irisattn/gaze/types.hpp"

namespace irisattn::gaze {

inline nlohmann::json to_json(const ScreenToImageTransform& t) {
  return {{"offset_x", t.offset_x}, {"offset_y", t.offset_y}, {"scale", t.scale},
          {"width", t.width},       {"height", t.height}};
}

inline ScreenToImageTransform transform_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "transform must be an object");
  ScreenToImageTransform t;
  try {
    t.offset_x = j.at("offset_x").get<double>();
    t.offset_y = j.at("offset_y").get<double>();
    t.scale = j.at("scale").get<double>();
    t.width = j.at("width").get<std::size_t>();
    t.height = j.at("height").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("transform descriptor: ") + e.what());
  }
  t.validate();
  return t;
}

/// Reads a transform descriptor: a JSON object with offset_x, offset_y,
/// scale, width and height.
inline ScreenToImageTransform parse_transform(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, std::string("transform descriptor: ") + e.what());
  }
  return transform_from_json(j);
}

}  // namespace irisattn::gaze
