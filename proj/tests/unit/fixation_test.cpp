#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "irisattn/gaze/fixation.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace irisattn;
using namespace irisattn::gaze;

namespace {

void expect_event_bounds(const std::vector<FixationEvent>& events, const FixationConfig& cfg) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    EXPECT_GE(events[i].t_end - events[i].t_start, cfg.min_duration_ms);
    EXPECT_LE(events[i].dispersion, cfg.dispersion_px);
    if (i > 0) {
      EXPECT_GT(events[i].t_start, events[i - 1].t_end);
    }
  }
}

}  // namespace

TEST(DetectFixations, StationaryGaze) {
  std::vector<GazeSample> s;
  for (int i = 0; i < 30; ++i) s.push_back({i * 500.0 / 29.0, 100, 100, true});
  const auto fx = detect_fixations(s, {40, 100});
  ASSERT_EQ(fx.size(), 1u);
  EXPECT_DOUBLE_EQ(fx[0].cx, 100);
  EXPECT_DOUBLE_EQ(fx[0].cy, 100);
  EXPECT_EQ(fx[0].dispersion, 0);
  EXPECT_EQ(fx[0].sample_count, 30u);
  EXPECT_DOUBLE_EQ(fx[0].duration(), 500);
}

TEST(DetectFixations, AlternatingFarPointsGiveNothing) {
  std::vector<GazeSample> s;
  for (int i = 0; i < 60; ++i) s.push_back({i * 16.0, i % 2 ? 600.0 : 100.0, 300, true});
  EXPECT_TRUE(detect_fixations(s, {40, 100}).empty());
}

TEST(DetectFixations, FewerThanTwoValidSamples) {
  EXPECT_TRUE(detect_fixations({}).empty());
  EXPECT_TRUE(detect_fixations({{0, 1, 1, true}, {200, 1, 1, false}}).empty());
}

TEST(DetectFixations, TooShortDwellIsSaccade) {
  std::vector<GazeSample> s;
  for (int i = 0; i < 5; ++i) s.push_back({i * 16.0, 100, 100, true});  // 64 ms
  EXPECT_TRUE(detect_fixations(s, {40, 100}).empty());
}

TEST(DetectFixations, InvalidSamplesAreSkipped) {
  std::vector<GazeSample> s;
  for (int i = 0; i < 20; ++i) s.push_back({i * 20.0, 50, 50, true});
  s[7] = {140, 5000, 5000, false};
  const auto fx = detect_fixations(s, {40, 100});
  ASSERT_EQ(fx.size(), 1u);
  EXPECT_EQ(fx[0].sample_count, 19u);
}

TEST(DetectFixations, ThreePlantedFixationsMatchBruteForce) {
  std::mt19937_64 rng(3);
  const FixationConfig cfg{40, 100};
  const auto trace = test_support::make_trace(rng, {.fixations = 3, .min_duration_ms = 100, .invalid_rate = 0.0});
  const auto fx = detect_fixations(trace.samples, cfg);
  ASSERT_EQ(fx.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(fx[i].cx, trace.planted[i].cx, 5.0);
    EXPECT_NEAR(fx[i].cy, trace.planted[i].cy, 5.0);
  }
  std::vector<GazeSample> valid;
  const auto oracle = test_support::brute_force_idt(trace.samples, cfg.dispersion_px, cfg.min_duration_ms, &valid);
  ASSERT_EQ(oracle.size(), fx.size());
  for (std::size_t i = 0; i < fx.size(); ++i) {
    EXPECT_EQ(fx[i].t_start, valid[oracle[i].first].t_ms);
    EXPECT_EQ(fx[i].t_end, valid[oracle[i].last].t_ms);
  }
}

TEST(DetectFixations, RandomWalksMatchBruteForceAndKeepBounds) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> step(0.0, 6.0);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const FixationConfig cfg{20.0 + 40.0 * u(rng), 50.0 + 100.0 * u(rng)};
    std::vector<GazeSample> s;
    double x = 500, y = 500, t = 0;
    for (int i = 0; i < 300; ++i) {
      if (u(rng) < 0.03) {  // occasional saccade
        x += 200 * (u(rng) - 0.5);
        y += 200 * (u(rng) - 0.5);
      }
      x += step(rng);
      y += step(rng);
      t += 10 + 20 * u(rng);
      s.push_back({t, x, y, u(rng) > 0.05});
    }
    const auto fx = detect_fixations(s, cfg);
    expect_event_bounds(fx, cfg);
    std::vector<GazeSample> valid;
    const auto oracle = test_support::brute_force_idt(s, cfg.dispersion_px, cfg.min_duration_ms, &valid);
    ASSERT_EQ(fx.size(), oracle.size()) << "trial " << trial;
    for (std::size_t i = 0; i < fx.size(); ++i) {
      EXPECT_EQ(fx[i].t_start, valid[oracle[i].first].t_ms);
      EXPECT_EQ(fx[i].sample_count, oracle[i].last - oracle[i].first + 1);
    }
  }
}

TEST(DetectFixations, TranslationInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> q(0, 400);
  std::uniform_int_distribution<int> shift(-1000, 1000);
  for (int trial = 0; trial < 50; ++trial) {
    // Quarter-pixel coordinates and integer shifts keep all arithmetic exact.
    std::vector<GazeSample> s;
    double t = 0;
    int cx = 400, cy = 400;
    for (int i = 0; i < 200; ++i) {
      if (i % 25 == 0) {
        cx = q(rng) * 4;
        cy = q(rng) * 4;
      }
      t += 16;
      s.push_back({t, cx + q(rng) % 40 * 0.25, cy + q(rng) % 40 * 0.25, true});
    }
    const double dx = shift(rng), dy = shift(rng);
    auto moved = s;
    for (auto& p : moved) {
      p.x += dx;
      p.y += dy;
    }
    const auto a = detect_fixations(s);
    const auto b = detect_fixations(moved);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].t_start, b[i].t_start);
      EXPECT_EQ(a[i].t_end, b[i].t_end);
      EXPECT_EQ(a[i].sample_count, b[i].sample_count);
      EXPECT_EQ(a[i].dispersion, b[i].dispersion);
      EXPECT_NEAR(a[i].cx + dx, b[i].cx, 1e-9);
      EXPECT_NEAR(a[i].cy + dy, b[i].cy, 1e-9);
    }
  }
}
