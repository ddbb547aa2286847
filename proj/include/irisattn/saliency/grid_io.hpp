#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"
#include "irisattn/saliency/grid.hpp"

namespace irisattn::saliency {

/// Grid file: {"width": W, "height": H, "values": [row-major W*H numbers]}.
/// An optional "normalized" flag is carried through but re-checked by users.
inline SaliencyGrid grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "grid must be an object");
  std::size_t w = 0, h = 0;
  std::vector<double> values;
  try {
    w = j.at("width").get<std::size_t>();
    h = j.at("height").get<std::size_t>();
    const auto& arr = j.at("values");
    if (!arr.is_array()) throw Error(ErrorCode::kFormat, "values must be an array");
    values.reserve(arr.size());
    for (const auto& v : arr) {
      if (!v.is_number()) throw Error(ErrorCode::kFormat, "values must be numbers");
      values.push_back(v.get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("grid: ") + e.what());
  }
  if (w == 0 || h == 0) throw Error(ErrorCode::kFormat, "grid width and height must be >= 1");
  if (values.size() != w * h) {
    throw Error(ErrorCode::kFormat, "declared " + std::to_string(w) + "x" + std::to_string(h) + " but got " +
                                        std::to_string(values.size()) + " values");
  }
  SaliencyGrid g(w, h, std::move(values));
  validate_nonnegative(g);
  return g;
}

namespace detail {

inline bool looks_like_pgm(std::string_view raw) {
  return raw.size() >= 2 && raw[0] == 'P' && raw[1] == '5';
}

/// Binary PGM (P5) with maxval up to 65535; samples map linearly to [0,1].
inline SaliencyGrid grid_from_pgm(std::string_view raw) {
  std::size_t pos = 2;
  auto next_token = [&]() -> std::size_t {
    while (pos < raw.size()) {
      if (raw[pos] == '#') {
        while (pos < raw.size() && raw[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(raw[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos < raw.size() && std::isdigit(static_cast<unsigned char>(raw[pos]))) {
      value = value * 10 + static_cast<std::size_t>(raw[pos] - '0');
      ++pos;
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCode::kFormat, "PGM header is malformed");
    return value;
  };
  const std::size_t w = next_token();
  const std::size_t h = next_token();
  const std::size_t maxval = next_token();
  if (w == 0 || h == 0 || maxval == 0 || maxval > 65535) throw Error(ErrorCode::kFormat, "PGM header out of range");
  ++pos;  // single whitespace before the raster
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  if (raw.size() < pos + w * h * bytes_per) throw Error(ErrorCode::kFormat, "PGM raster is truncated");
  std::vector<double> values(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    std::uint32_t s = static_cast<unsigned char>(raw[pos + i * bytes_per]);
    if (bytes_per == 2) s = (s << 8) | static_cast<unsigned char>(raw[pos + i * 2 + 1]);
    values[i] = static_cast<double>(s) / static_cast<double>(maxval);
  }
  return SaliencyGrid(w, h, std::move(values));
}

}  // namespace detail

/// Loads a grid from file content: JSON grid format, or a binary 8/16-bit
/// grayscale PGM. Result is unnormalized.
inline SaliencyGrid load_saliency_grid(std::string_view raw) {
  if (detail::looks_like_pgm(raw)) return detail::grid_from_pgm(raw);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, std::string("grid: ") + e.what());
  }
  return grid_from_json(j);
}

inline nlohmann::json to_json(const SaliencyGrid& g) {
  return {{"width", g.width}, {"height", g.height}, {"normalized", g.normalized}, {"values", g.values}};
}

inline std::string dump_grid(const SaliencyGrid& g) { return to_json(g).dump(); }

}  // namespace irisattn::saliency
