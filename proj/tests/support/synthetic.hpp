#pragma once

// Seeded generators for synthetic gaze traces and probability grids.

#include <cmath>
#include <random>
#include <vector>

#include "irisattn/gaze/types.hpp"
#include "irisattn/saliency/grid.hpp"

namespace irisattn::test_support {

struct PlantedFixation {
  double cx, cy, t_start, t_end;
};

struct SyntheticTrace {
  std::vector<gaze::GazeSample> samples;
  std::vector<PlantedFixation> planted;
};

struct TraceSpec {
  std::size_t fixations = 3;
  double min_duration_ms = 100.0;  // planted durations are 2x..4x this
  double jitter_px = 5.0;
  double min_separation_px = 300.0;
  double sweep_step_px = 120.0;  // spacing of saccade samples, far above any dispersion bound
  double invalid_rate = 0.05;
};

/// Planted fixations at random screen locations joined by fast straight
/// sweeps. Sampling runs at 30 or 60 Hz; a few samples are flagged invalid
/// and carry junk coordinates.
inline SyntheticTrace make_trace(std::mt19937_64& rng, const TraceSpec& spec = {}) {
  std::uniform_real_distribution<double> ux(100.0, 1820.0), uy(100.0, 980.0);
  std::uniform_real_distribution<double> jitter(-spec.jitter_px, spec.jitter_px);
  std::uniform_real_distribution<double> dur(2.0 * spec.min_duration_ms, 4.0 * spec.min_duration_ms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double period = unit(rng) < 0.5 ? 1000.0 / 30.0 : 1000.0 / 60.0;

  SyntheticTrace out;
  double t = 0.0;
  auto push = [&](double x, double y) {
    const bool valid = unit(rng) >= spec.invalid_rate;
    out.samples.push_back({t, valid ? x : -1.0, valid ? y : -1.0, valid});
    t += period;
  };

  double px = 0.0, py = 0.0;
  for (std::size_t f = 0; f < spec.fixations; ++f) {
    double cx, cy;
    do {
      cx = ux(rng);
      cy = uy(rng);
    } while (f > 0 && std::hypot(cx - px, cy - py) < spec.min_separation_px);
    if (f > 0) {
      const double dist = std::hypot(cx - px, cy - py);
      const auto steps = static_cast<std::size_t>(std::floor(dist / spec.sweep_step_px));
      for (std::size_t i = 1; i < steps; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(steps);
        push(px + a * (cx - px), py + a * (cy - py));
      }
    }
    const double target = dur(rng);
    PlantedFixation p{cx, cy, t, 0.0};
    const double start = t;
    // The planted interval runs from its first to its last valid sample.
    do {
      out.samples.push_back({t, cx + jitter(rng), cy + jitter(rng), true});
      p.t_end = t;
      t += period;
      if (unit(rng) < spec.invalid_rate) {
        out.samples.push_back({t, -1.0, -1.0, false});
        t += period;
      }
    } while (p.t_end - start < target);
    out.planted.push_back(p);
    px = cx;
    py = cy;
  }
  return out;
}

/// Random normalized grid; a fraction of cells is zeroed to exercise sparse support.
inline saliency::SaliencyGrid random_prob_grid(std::mt19937_64& rng, std::size_t w, std::size_t h,
                                               double zero_fraction = 0.2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  saliency::SaliencyGrid g(w, h, 0.0);
  double total = 0.0;
  for (auto& v : g.values) {
    v = u(rng) < zero_fraction ? 0.0 : u(rng);
    total += v;
  }
  if (total == 0.0) g.values[0] = total = 1.0;
  for (auto& v : g.values) v /= total;
  g.normalized = true;
  return g;
}

inline saliency::SaliencyGrid gaussian_blob(std::size_t w, std::size_t h, double cx, double cy, double sigma) {
  saliency::SaliencyGrid g(w, h, 0.0);
  double total = 0.0;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      g.at(x, y) = std::exp(-r2 / (2 * sigma * sigma));
      total += g.at(x, y);
    }
  }
  for (auto& v : g.values) v /= total;
  g.normalized = true;
  return g;
}

}  // namespace irisattn::test_support
