#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "irisattn/gaze/types.hpp"

namespace irisattn::gaze {

struct ClusterConfig {
  double neighborhood_px = 50.0;  // image px
  std::size_t min_members = 2;    // neighbourhood count, the point itself included
  double display_radius_px = 60.0;
};

namespace detail {

struct ClusterPoint {
  double u, v, duration;
};

inline bool canonical_less(const ClusterPoint& a, const ClusterPoint& b) noexcept {
  return std::tie(a.u, a.v, a.duration) < std::tie(b.u, b.v, b.duration);
}

}  // namespace detail

/// Density-based (DBSCAN-style) clustering of fixation centroids in image
/// coordinates.
///
/// Core points have at least `min_members` neighbours within
/// `neighborhood_px` (inclusive, counting themselves). Clusters are the
/// connected components of core points; a border point joins the cluster of
/// its nearest core point. Points are put in a canonical order up front so
/// the result does not depend on input order. Clusters are returned sorted by
/// center (x, then y).
inline std::vector<FixationCluster> cluster_fixations(const std::vector<FixationEvent>& fixations,
                                                      const ScreenToImageTransform& transform,
                                                      const ClusterConfig& cfg = {}) {
  transform.validate();
  std::vector<detail::ClusterPoint> pts;
  for (const auto& f : fixations) {
    if (auto uv = transform.map_inside(f.cx, f.cy)) {
      pts.push_back({uv->first, uv->second, f.duration()});
    }
  }
  std::sort(pts.begin(), pts.end(), detail::canonical_less);
  const std::size_t n = pts.size();
  const double eps2 = cfg.neighborhood_px * cfg.neighborhood_px;
  auto dist2 = [&](std::size_t a, std::size_t b) {
    const double du = pts[a].u - pts[b].u;
    const double dv = pts[a].v - pts[b].v;
    return du * du + dv * dv;
  };

  std::vector<std::vector<std::size_t>> neighbours(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dist2(i, j) <= eps2) neighbours[i].push_back(j);
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = neighbours[i].size() >= std::max<std::size_t>(cfg.min_members, 1);

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(n, kNone);
  std::size_t next_label = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || label[seed] != kNone) continue;
    std::vector<std::size_t> stack{seed};
    label[seed] = next_label;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      for (std::size_t q : neighbours[p]) {
        if (core[q] && label[q] == kNone) {
          label[q] = next_label;
          stack.push_back(q);
        }
      }
    }
    ++next_label;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q : neighbours[i]) {
      // Canonical order makes the first strict minimum a deterministic tie-break.
      if (core[q] && dist2(i, q) < best) {
        best = dist2(i, q);
        label[i] = label[q];
      }
    }
  }

  std::vector<FixationCluster> clusters(next_label);
  std::vector<double> sum_u(next_label, 0.0), sum_v(next_label, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == kNone) continue;
    auto& c = clusters[label[i]];
    ++c.member_count;
    c.total_duration += pts[i].duration;
    sum_u[label[i]] += pts[i].u;
    sum_v[label[i]] += pts[i].v;
  }
  std::vector<FixationCluster> out;
  for (std::size_t k = 0; k < next_label; ++k) {
    auto c = clusters[k];
    if (c.member_count < cfg.min_members) continue;
    c.cx = sum_u[k] / static_cast<double>(c.member_count);
    c.cy = sum_v[k] / static_cast<double>(c.member_count);
    c.radius = cfg.display_radius_px;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const FixationCluster& a, const FixationCluster& b) {
    return std::tie(a.cx, a.cy) < std::tie(b.cx, b.cy);
  });
  return out;
}

}  // namespace irisattn::gaze
