#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "irisattn/gaze/human_map.hpp"
#include "irisattn/gaze/transform_io.hpp"
#include "support/oracles.hpp"

using namespace irisattn;
using namespace irisattn::gaze;

namespace {

FixationEvent fixation(double x, double y, double dur) { return {1000, 1000 + dur, x, y, 0, 10}; }

double disk_mass(const saliency::SaliencyGrid& g, double cx, double cy, double r) {
  double m = 0;
  for (std::size_t y = 0; y < g.height; ++y) {
    for (std::size_t x = 0; x < g.width; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m += g.at(x, y);
    }
  }
  return m;
}

}  // namespace

TEST(BuildHumanMap, SingleFixationPeaksAtCenter) {
  const ScreenToImageTransform t{0, 0, 1, 101, 101};
  const auto g = build_human_map({fixation(50.5, 50.5, 250)}, t, 20);
  EXPECT_TRUE(g.normalized);
  EXPECT_NEAR(g.sum(), 1.0, 1e-9);
  const auto peak = std::max_element(g.values.begin(), g.values.end()) - g.values.begin();
  EXPECT_EQ(static_cast<std::size_t>(peak), 50u * 101 + 50);
  // Radial symmetry around the peak.
  EXPECT_NEAR(g.at(40, 50), g.at(60, 50), 1e-15);
  EXPECT_NEAR(g.at(50, 40), g.at(50, 60), 1e-15);
  EXPECT_NEAR(g.at(40, 50), g.at(50, 40), 1e-15);
}

TEST(BuildHumanMap, SigmaIsRescaledToImagePixels) {
  // Screen shows the image at 2x, so 20 screen px are 10 image px.
  const ScreenToImageTransform t{0, 0, 2, 81, 81};
  const auto g = build_human_map({fixation(81, 81, 100)}, t, 20);
  const double ratio = g.at(50, 40) / g.at(40, 40);
  EXPECT_NEAR(ratio, std::exp(-0.5 * 1.0), 1e-12);  // 10 px = 1 sigma
}

TEST(BuildHumanMap, DurationWeightedMassInterior) {
  const ScreenToImageTransform t{0, 0, 1, 200, 200};
  const auto g = build_human_map({fixation(50, 100, 300), fixation(150, 100, 100)}, t, 20);
  const std::vector<test_support::WeightedGaussian> model = {{50, 100, 300}, {150, 100, 100}};
  const double oracle = test_support::integrate_gaussians_over_disk(model, 20, 50, 100, 45, -0.5, 199.5, -0.5, 199.5) /
                        test_support::integrate_gaussians_over_disk(model, 20, 150, 100, 45, -0.5, 199.5, -0.5, 199.5);
  const double got = disk_mass(g, 50, 100, 45) / disk_mass(g, 150, 100, 45);
  EXPECT_NEAR(got / 3.0, 1.0, 0.01);
  EXPECT_NEAR(got / oracle, 1.0, 0.01);
}

TEST(BuildHumanMap, TruncationAtBorderMatchesQuadrature) {
  const ScreenToImageTransform t{0, 0, 1, 200, 200};
  const auto g = build_human_map({fixation(60, 100, 300), fixation(185, 100, 100)}, t, 20);
  const std::vector<test_support::WeightedGaussian> model = {{60, 100, 300}, {185, 100, 100}};
  const double oracle = test_support::integrate_gaussians_over_disk(model, 20, 60, 100, 50, -0.5, 199.5, -0.5, 199.5) /
                        test_support::integrate_gaussians_over_disk(model, 20, 185, 100, 50, -0.5, 199.5, -0.5, 199.5);
  const double got = disk_mass(g, 60, 100, 50) / disk_mass(g, 185, 100, 50);
  EXPECT_GT(oracle, 3.3);  // the border visibly cuts the second bump
  EXPECT_NEAR(got / oracle, 1.0, 0.01);
}

TEST(BuildHumanMap, AllOutsideIsEmptyMapError) {
  const ScreenToImageTransform t{100, 100, 1, 50, 50};
  try {
    build_human_map({fixation(10, 10, 100), fixation(160, 120, 100)}, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMap);
  }
  EXPECT_THROW(build_human_map({}, t), Error);
}

TEST(BuildHumanMap, RejectsNonPositiveSigma) {
  EXPECT_THROW(build_human_map({fixation(1, 1, 10)}, {0, 0, 1, 4, 4}, 0.0), Error);
}

TEST(BuildHumanMap, NormalizedNonnegativeAndScaleInvariant) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const ScreenToImageTransform t{200 * u(rng), 100 * u(rng), 0.5 + 2 * u(rng),
                                   static_cast<std::size_t>(20 + 80 * u(rng)), static_cast<std::size_t>(20 + 80 * u(rng))};
    std::vector<FixationEvent> fx;
    for (int i = 0; i < 12; ++i) {
      const auto [sx, sy] = t.to_screen(-10 + (t.width + 20) * u(rng), -10 + (t.height + 20) * u(rng));
      fx.push_back(fixation(sx, sy, 100 + 500 * u(rng)));
    }
    fx.push_back(fixation(t.to_screen(1, 1).first, t.to_screen(1, 1).second, 150));
    const auto g = build_human_map(fx, t, 20);
    EXPECT_NEAR(g.sum(), 1.0, 1e-9);
    for (double v : g.values) ASSERT_GE(v, 0.0);

    auto doubled = fx;
    for (auto& f : doubled) f.t_end = f.t_start + 2 * f.duration();
    const auto g2 = build_human_map(doubled, t, 20);
    for (std::size_t i = 0; i < g.size(); ++i) ASSERT_NEAR(g.values[i], g2.values[i], 1e-12);
  }
}

TEST(TransformDescriptor, ParsesAndValidates) {
  const auto t = parse_transform(R"({"offset_x": 10, "offset_y": 20, "scale": 2.5, "width": 400, "height": 400})");
  EXPECT_EQ(t.width, 400u);
  EXPECT_DOUBLE_EQ(t.scale, 2.5);
  const auto [u, v] = t.to_image(35, 45);
  EXPECT_DOUBLE_EQ(u, 10);
  EXPECT_DOUBLE_EQ(v, 10);
  EXPECT_THROW(parse_transform(R"({"offset_x": 0, "offset_y": 0, "scale": 0, "width": 4, "height": 4})"), Error);
  EXPECT_THROW(parse_transform(R"({"offset_x": 0})"), Error);
}

TEST(TransformDescriptor, ImagePixelRoundTripsThroughScreen) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const ScreenToImageTransform t{1000 * u(rng), 500 * u(rng), 0.25 + 4 * u(rng), 640, 480};
    const double a = 640 * u(rng), b = 480 * u(rng);
    const auto [sx, sy] = t.to_screen(a, b);
    const auto back = t.map_inside(sx, sy);
    ASSERT_TRUE(back.has_value());
    EXPECT_NEAR(back->first, a, 0.5);
    EXPECT_NEAR(back->second, b, 0.5);
  }
}
