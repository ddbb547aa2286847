#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irisattn {

enum class ErrorCode {
  kParse,          // malformed input row or record
  kOrdering,       // time regression in a gaze log
  kFormat,         // structurally invalid file (count mismatch, missing field)
  kDomain,         // value outside its domain (negative saliency, bad label)
  kEmptyMap,       // no mass lands inside the image
  kDegenerateMap,  // all-zero grid cannot be normalized
  kShape,          // grid dimensions disagree
  kContract,       // caller broke a precondition
  kIncompleteGroup,
  kCapacity,
  kNotFound,
  kSequence,
  kConflict,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kOrdering: return "ordering";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kEmptyMap: return "empty-map";
    case ErrorCode::kDegenerateMap: return "degenerate-map";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kIncompleteGroup: return "incomplete-group";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kSequence: return "sequence";
    case ErrorCode::kConflict: return "conflict";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure tied to a 1-based line number of the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace irisattn
