#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "irisattn/common/error.hpp"
#include "irisattn/common/numeric.hpp"
#include "irisattn/gaze/types.hpp"

namespace irisattn::gaze {

inline constexpr std::string_view kGazeLogHeader = "t_ms,x,y,valid";

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

/// Parses a `t_ms,x,y,valid` CSV gaze log. The header line is optional and
/// blank lines are ignored. Rows flagged invalid are kept with valid=false.
inline std::vector<GazeSample> parse_gaze_log(std::istream& in) {
  std::vector<GazeSample> samples;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!seen_content) {
      seen_content = true;
      if (row == kGazeLogHeader) continue;
    }
    const auto fields = detail::split_commas(row);
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 columns (t_ms,x,y,valid), got " + std::to_string(fields.size()));
    }
    const auto t = parse_double(fields[0]);
    const auto x = parse_double(fields[1]);
    const auto y = parse_double(fields[2]);
    if (!t || !x || !y) throw ParseError(line_no, "non-numeric field");
    const std::string_view flag = trim(fields[3]);
    if (flag != "0" && flag != "1") throw ParseError(line_no, "valid flag must be 0 or 1");
    if (*t < 0.0) throw ParseError(line_no, "negative timestamp");
    if (!samples.empty() && *t < samples.back().t_ms) {
      throw Error(ErrorCode::kOrdering, "line " + std::to_string(line_no) + ": timestamp " +
                                            std::string(trim(fields[0])) + " precedes previous row");
    }
    samples.push_back({*t, *x, *y, flag == "1"});
  }
  return samples;
}

inline std::vector<GazeSample> parse_gaze_log(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_gaze_log(in);
}

inline std::string format_gaze_log(const std::vector<GazeSample>& samples, bool header = true) {
  std::ostringstream out;
  out.precision(17);
  if (header) out << kGazeLogHeader << '\n';
  for (const auto& s : samples) out << s.t_ms << ',' << s.x << ',' << s.y << ',' << (s.valid ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace irisattn::gaze
