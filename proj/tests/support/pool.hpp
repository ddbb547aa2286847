#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "irisattn/experiment/pair.hpp"

namespace irisattn::test_support {

/// `genuine` same-eye pairs followed by `impostor` different-eye pairs.
inline std::vector<experiment::PairSpec> make_pool(std::size_t genuine, std::size_t impostor) {
  std::vector<experiment::PairSpec> pool;
  for (std::size_t i = 0; i < genuine + impostor; ++i) {
    experiment::PairSpec p;
    p.pair_id = "p" + std::to_string(i);
    p.left_image = "img/" + std::to_string(i) + "_l.png";
    p.right_image = "img/" + std::to_string(i) + "_r.png";
    const bool g = i < genuine;
    p.left_eye = "eye" + std::to_string(i % 7);
    p.right_eye = g ? p.left_eye : "eye" + std::to_string(i % 7 + 100);
    p.ground_truth = g ? eval::Verdict::kGenuine : eval::Verdict::kImpostor;
    p.left_pmi_days = static_cast<std::int64_t>(i % 5);
    p.right_pmi_days = static_cast<std::int64_t>(i % 11);
    p.left_transform = gaze::ScreenToImageTransform{100, 200, 2.0, 320, 320};
    p.right_transform = gaze::ScreenToImageTransform{1000, 200, 2.0, 320, 320};
    pool.push_back(p);
  }
  return pool;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  static std::random_device rd;
  auto dir = std::filesystem::temp_directory_path() / ("irisattn-" + name + "-" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace irisattn::test_support
