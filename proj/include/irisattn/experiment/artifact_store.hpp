#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "irisattn/common/error.hpp"
#include "irisattn/gaze/log_parser.hpp"
#include "irisattn/saliency/grid_io.hpp"

namespace irisattn::experiment {

enum class ArtifactKind { kGrid, kGaze };

/// Per-pair storage for saliency grids and gaze logs, laid out as
/// <root>/pairs/<pair id>/{grids,gaze}/<name>. Content is validated with
/// the same parsers the analysis tools use before it is stored.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path data_root) : root_(std::move(data_root)) {}

  static bool valid_name(std::string_view name) {
    if (name.empty() || name.size() > 128 || name.front() == '.') return false;
    for (char c : name) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                      c == '-' || c == '.';
      if (!ok) return false;
    }
    return true;
  }

  void put(std::string_view pair_id, ArtifactKind kind, std::string_view name, std::string_view content) const {
    if (kind == ArtifactKind::kGrid) {
      saliency::load_saliency_grid(content);
    } else {
      gaze::parse_gaze_log(content);
    }
    const auto target = path_for(pair_id, kind, name);
    std::filesystem::create_directories(target.parent_path());
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      if (!out) throw Error(ErrorCode::kFormat, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }

  std::optional<std::string> get(std::string_view pair_id, ArtifactKind kind, std::string_view name) const {
    const auto target = path_for(pair_id, kind, name);
    std::ifstream in(target, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  /// Resolves an opaque image reference, refusing anything outside the root.
  std::optional<std::filesystem::path> resolve_image(std::string_view ref) const {
    const auto root = std::filesystem::weakly_canonical(root_);
    const auto candidate = std::filesystem::weakly_canonical(root_ / std::filesystem::path(ref));
    const auto rel = candidate.lexically_relative(root);
    if (rel.empty() || *rel.begin() == "..") return std::nullopt;
    if (!std::filesystem::is_regular_file(candidate)) return std::nullopt;
    return candidate;
  }

  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path path_for(std::string_view pair_id, ArtifactKind kind, std::string_view name) const {
    if (!valid_name(pair_id) || !valid_name(name)) throw Error(ErrorCode::kDomain, "invalid pair or artifact name");
    return root_ / "pairs" / std::string(pair_id) / (kind == ArtifactKind::kGrid ? "grids" : "gaze") / std::string(name);
  }

  std::filesystem::path root_;
};

}  // namespace irisattn::experiment
