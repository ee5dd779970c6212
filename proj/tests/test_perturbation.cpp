#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace shutterforge;
using namespace shutterforge::perturb;

TEST(SpatialShift, ZeroOffsetIsIdentity)
{
  std::mt19937_64 g(1);
  const auto img = sftest::random_image(g, 8, 8, 3);
  const auto r = spatial_shift(img, 0, 123);
  EXPECT_EQ(r.image, img);
  EXPECT_EQ(r.dx, 0);
  EXPECT_EQ(r.dy, 0);
}

TEST(SpatialShift, DeterministicAndTranslates)
{
  std::mt19937_64 g(2);
  const auto img = sftest::random_image(g, 20, 20, 1);
  const auto a = spatial_shift(img, 6, 77);
  const auto b = spatial_shift(img, 6, 77);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.dx, b.dx);
  EXPECT_EQ(a.dy, b.dy);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x)
      ASSERT_EQ(a.image(y, x), img(std::clamp<int>(y - static_cast<int>(a.dy), 0, 19),
                                   std::clamp<int>(x - static_cast<int>(a.dx), 0, 19)));
  EXPECT_THROW(spatial_shift(img, 20, 0), ArgumentError);
}

TEST(SpatialShift, TenThousandSeedsStayInBoundsAndReachThem)
{
  const auto img = Image::filled(16, 16, 1, 0.5f);
  std::int64_t min_dx = 0, max_dx = 0, min_dy = 0, max_dy = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto r = spatial_shift(img, 8, seed);
    ASSERT_LE(std::abs(r.dx), 8);
    ASSERT_LE(std::abs(r.dy), 8);
    min_dx = std::min(min_dx, r.dx);
    max_dx = std::max(max_dx, r.dx);
    min_dy = std::min(min_dy, r.dy);
    max_dy = std::max(max_dy, r.dy);
  }
  EXPECT_EQ(min_dx, -8);
  EXPECT_EQ(max_dx, 8);
  EXPECT_EQ(min_dy, -8);
  EXPECT_EQ(max_dy, 8);
}

TEST(TemporalShift, ZeroDelayMatchesNominal)
{
  std::mt19937_64 g(3);
  const auto seq = sftest::random_sequence(g, 20, 6, 6);
  const ExposureSchedule w{6, 0, 2};
  const auto r = temporal_shift_rs(seq, w, 0, 0, 9);
  EXPECT_EQ(r.delta, 0);
  EXPECT_EQ(r.image, synthesis::rs_synthesize(seq, w));
}

TEST(TemporalShift, ShiftedWindowOracle)
{
  std::vector<Image> frames;
  for (std::size_t t = 0; t < 30; ++t)
    frames.push_back(Image::generate(6, 6, 1, [&](std::size_t y, std::size_t x, std::size_t) {
      return static_cast<float>((x + t) % 36) / 36.f + static_cast<float>(y) / 1000.f;
    }));
  const FrameSequence seq(frames);
  const ExposureSchedule w{6, 0, 1};
  const auto r = temporal_shift_rs(seq, w, 5, 5, 1);
  EXPECT_EQ(r.delta, 5);
  for (std::size_t k = 0; k < 6; ++k)
    for (std::size_t x = 0; x < 6; ++x)
      EXPECT_EQ(r.image(k, x), frames[1 + 5 + k](k, x));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto d = temporal_shift_rs(seq, w, 5, 15, seed).delta;
    ASSERT_GE(d, 5);
    ASSERT_LE(d, 15);
  }
  EXPECT_THROW(temporal_shift_rs(seq, w, 5, 24, 0), BoundsError);
}

TEST(TemporalShift, StaticSceneUnaffected)
{
  std::mt19937_64 g(4);
  const auto frame = sftest::random_image(g, 5, 5, 3);
  const FrameSequence seq(std::vector<Image>(25, frame));
  EXPECT_EQ(temporal_shift_rs(seq, {5, 0, 0}, 5, 15, 3).image, frame);
}

TEST(LowLight, ZeroImageStaysZeroAndOutputBounded)
{
  const auto zero = Image::filled(10, 10, 3, 0.f);
  for (float v : sftest::values(low_light(zero, 300, 2.0, 3.5, 5).image))
    EXPECT_EQ(v, 0.f);
  std::mt19937_64 g(5);
  const auto img = sftest::random_image(g, 32, 32, 3);
  const auto a = low_light(img, 300, 2.0, 3.5, 6);
  EXPECT_GE(a.gamma, 2.0);
  EXPECT_LE(a.gamma, 3.5);
  for (float v : a.image.data()) {
    EXPECT_GE(v, 0.f);
    EXPECT_LE(v, 1.f);
  }
  EXPECT_EQ(a.image, low_light(img, 300, 2.0, 3.5, 6).image);
  EXPECT_NE(a.image, low_light(img, 300, 2.0, 3.5, 7).image);
}

TEST(LowLight, OutputIndependentOfThreadCount)
{
  std::mt19937_64 g(6);
  const auto img = sftest::random_image(g, 40, 17, 1);
  const auto a = low_light_fixed_gamma(img, 500, 1.0, 11);
  // Recompute element by element through the documented per-element streams.
  for (std::size_t i = 0; i < img.size(); ++i) {
    rng::Stream s(11, i + 1);
    const double c = static_cast<double>(rng::poisson(s, static_cast<double>(img[i]) * 500));
    ASSERT_EQ(a[i], static_cast<float>(std::min(c / 500, 1.0)));
  }
}

TEST(LowLight, PoissonMeanWithinThreeSigma)
{
  const std::size_t side = 1000;
  const auto img = Image::filled(side, side, 1, 0.5f);
  for (double peak : {300.0, 500.0, 800.0}) {
    const auto out = low_light_fixed_gamma(img, peak, 1.0, 2024);
    double sum = 0.0;
    for (float v : out.data())
      sum += v;
    const double mean = sum / static_cast<double>(out.size());
    const double sigma = std::sqrt(0.5 / peak) / 1000.0;
    EXPECT_LE(std::abs(mean - 0.5), 3 * sigma) << peak;
  }
}

TEST(Stereo, ZeroDisparityAndIntegerShift)
{
  std::mt19937_64 g(7);
  const auto img = sftest::random_image(g, 6, 30, 3);
  EXPECT_EQ(stereo_shift(img, MaskMap::filled(6, 30, 0.7f), 0.0), img);
  for (double d_up : {20.0, 25.0})
    {
      const auto out = stereo_shift(img, MaskMap::filled(6, 30, 1.f), d_up);
      for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 30; ++x)
          for (std::size_t c = 0; c < 3; ++c)
            ASSERT_EQ(out(y, x, c), img(y, std::min<std::size_t>(x + static_cast<std::size_t>(d_up), 29), c));
    }
  EXPECT_THROW(stereo_shift(img, MaskMap::filled(6, 29, 1.f), 3.0), ShapeError);
}

TEST(Stereo, RampBilinearOracle)
{
  const std::size_t w = 16;
  const auto ramp = Image::generate(2, w, 1, [&](auto, std::size_t x, auto) {
    return static_cast<float>(x) / static_cast<float>(w - 1);
  });
  const auto out3 = stereo_shift(ramp, MaskMap::filled(2, w, 1.f), 3.0);
  for (std::size_t x = 0; x < w; ++x)
    EXPECT_EQ(out3(0, x), ramp(0, std::min(x + 3, w - 1)));
  const auto outh = stereo_shift(ramp, MaskMap::filled(2, w, 0.5f), 3.0);
  for (std::size_t x = 0; x < w; ++x) {
    const double sx = std::min(static_cast<double>(x) + 1.5, static_cast<double>(w - 1));
    const auto x0 = static_cast<std::size_t>(sx);
    const std::size_t x1 = std::min(x0 + 1, w - 1);
    const double a = sx - static_cast<double>(x0);
    EXPECT_NEAR(outh(1, x), (1 - a) * ramp(1, x0) + a * ramp(1, x1), 1e-6);
  }
}

TEST(PerturbSpec, Validation)
{
  PerturbSpec s;
  s.kind = Kind::spatial_shift;
  s.max_offset = -1;
  EXPECT_THROW(s.validate(), ArgumentError);
  s = {};
  s.kind = Kind::low_light;
  s.peak = 0;
  EXPECT_THROW(s.validate(), ArgumentError);
  s = {};
  s.kind = Kind::temporal_shift;
  s.delta_lo = 9;
  s.delta_hi = 3;
  EXPECT_THROW(s.validate(), ArgumentError);
  s = {};
  s.kind = Kind::stereo;
  s.d_up = -1;
  EXPECT_THROW(s.validate(), ArgumentError);
  for (double d : {20.0, 25.0, 30.0, 35.0}) {
    s.d_up = d;
    EXPECT_NO_THROW(s.validate());
  }
  EXPECT_EQ(kind_from_string("low_light"), Kind::low_light);
  EXPECT_THROW(kind_from_string("blur"), ArgumentError);
}
