#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace shutterforge;
using namespace shutterforge::metrics;

namespace {

// Direct 11x11 windowed SSIM with replicate padding: every local statistic is
// a 121-term weighted sum, no separable passes.
double ref_ssim(const Image& a, const Image& b)
{
  const int h = static_cast<int>(a.height());
  const int w = static_cast<int>(a.width());
  const auto la = luminance(a);
  const auto lb = luminance(b);
  double g1[11];
  double gs = 0.0;
  for (int i = 0; i < 11; ++i) {
    g1[i] = std::exp(-(i - 5) * (i - 5) / (2 * 1.5 * 1.5));
    gs += g1[i];
  }
  for (double& v : g1)
    v /= gs;
  const double c1 = 1e-4, c2 = 9e-4;
  double total = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
      for (int j = -5; j <= 5; ++j)
        for (int i = -5; i <= 5; ++i) {
          const double wt = g1[j + 5] * g1[i + 5];
          const std::size_t idx = static_cast<std::size_t>(std::clamp(y + j, 0, h - 1) * w + std::clamp(x + i, 0, w - 1));
          ma += wt * la[idx];
          mb += wt * lb[idx];
          saa += wt * la[idx] * la[idx];
          sbb += wt * lb[idx] * lb[idx];
          sab += wt * la[idx] * lb[idx];
        }
      const double va = saa - ma * ma, vb = sbb - mb * mb, cov = sab - ma * mb;
      total += (2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
  return total / (h * w);
}

Image hflip(const Image& img)
{
  return Image::generate(img.height(), img.width(), img.channels(),
                         [&](std::size_t y, std::size_t x, std::size_t c) {
                           return img(y, img.width() - 1 - x, c);
                         });
}

}  // namespace

TEST(Mse, ClosedForms)
{
  std::mt19937_64 g(1);
  const auto a = sftest::random_image(g, 7, 5, 3);
  const auto b = sftest::random_image(g, 7, 5, 3);
  EXPECT_EQ(mse(a, a), 0.0);
  EXPECT_NEAR(mse(Image::filled(3, 3, 1, 1.f), Image::filled(3, 3, 1, 0.9f)), 0.01, 1e-8);
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += (static_cast<double>(a[i]) - b[i]) * (static_cast<double>(a[i]) - b[i]);
  EXPECT_NEAR(mse(a, b), acc / static_cast<double>(a.size()), 1e-15);
  EXPECT_THROW(mse(a, sftest::random_image(g, 7, 5, 1)), ShapeError);
}

TEST(Psnr, CapAndLogArithmetic)
{
  std::mt19937_64 g(2);
  const auto a = sftest::random_image(g, 16, 16, 3);
  const auto b = sftest::random_image(g, 16, 16, 3);
  EXPECT_EQ(psnr(a, a), 100.0);
  EXPECT_EQ(psnr(a, a, 60.0), 60.0);
  // 0.5 and 0.25 are exact in f32, so mse is exactly 1/16.
  EXPECT_NEAR(psnr(Image::filled(4, 4, 1, 0.5f), Image::filled(4, 4, 1, 0.25f)),
              10.0 * std::log10(16.0), 1e-9);
  const double e = mse(a, b);
  EXPECT_NEAR(psnr(a, b), 10.0 * std::log10(1.0 / e), 1e-9);
  EXPECT_EQ(psnr(a, b), psnr(b, a));
  EXPECT_NEAR(psnr(hflip(a), hflip(b)), psnr(a, b), 1e-9);
}

TEST(Ssim, IdentityIsExactlyOne)
{
  std::mt19937_64 g(3);
  for (int t = 0; t < 5; ++t) {
    const auto a = sftest::random_image(g, 11 + t, 19, t % 2 ? 3 : 1);
    EXPECT_EQ(ssim(a, a), 1.0);
  }
}

TEST(Ssim, MatchesWindowedOracleAndSymmetric)
{
  std::mt19937_64 g(4);
  for (int t = 0; t < 5; ++t) {
    const auto a = sftest::random_image(g, 16, 20, 3);
    const auto b = sftest::random_image(g, 16, 20, 3);
    EXPECT_NEAR(ssim(a, b), ref_ssim(a, b), 1e-6);
    EXPECT_EQ(ssim(a, b), ssim(b, a));
    EXPECT_NEAR(ssim(hflip(a), hflip(b)), ssim(a, b), 1e-12);
  }
}

TEST(Ssim, CheckerboardInversionIsNegative)
{
  const auto a = Image::generate(16, 16, 1, [](std::size_t y, std::size_t x, std::size_t) {
    return (x + y) % 2 ? 1.f : 0.f;
  });
  const auto b = Image::generate(16, 16, 1, [&](std::size_t y, std::size_t x, std::size_t) {
    return 1.f - a(y, x);
  });
  const double s = ssim(a, b);
  EXPECT_LT(s, 0.0);
  EXPECT_NEAR(s, ref_ssim(a, b), 1e-6);
}

TEST(Ssim, ConstantImagesLuminanceClosedForm)
{
  const double ma = 0.8, mb = 0.3;
  const double expected = (2 * ma * mb + 1e-4) / (ma * ma + mb * mb + 1e-4);
  EXPECT_NEAR(ssim(Image::filled(12, 12, 1, 0.8f), Image::filled(12, 12, 1, 0.3f)), expected, 1e-6);
  EXPECT_THROW(ssim(Image::filled(10, 12, 1, 0.f), Image::filled(10, 12, 1, 0.f)), ArgumentError);
}

TEST(AbsRel, ClosedForms)
{
  std::mt19937_64 g(5);
  const auto gt = Image::generate(6, 6, 1, [&](auto, auto, auto) {
    return std::uniform_real_distribution<float>(0.1f, 0.8f)(g);
  });
  EXPECT_EQ(abs_rel(gt, gt), 0.0);
  const auto d = Image::generate(6, 6, 1, [&](std::size_t y, std::size_t x, std::size_t) {
    return 1.2f * gt(y, x);
  });
  EXPECT_NEAR(abs_rel(d, gt), 0.2, 1e-6);
  const auto r = sftest::random_image(g, 6, 6, 1);
  double acc = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < 36; ++i)
    if (gt[i] >= 1.0 / 255.0) {
      acc += std::abs(static_cast<double>(r[i]) - gt[i]) / gt[i];
      ++n;
    }
  EXPECT_NEAR(abs_rel(r, gt), acc / static_cast<double>(n), 1e-12);
  EXPECT_THROW(abs_rel(gt, Image::filled(6, 6, 1, 0.f)), DegenerateInputError);
}

TEST(Delta, Thresholds)
{
  EXPECT_EQ(delta_thresholds[0], 1.15);
  EXPECT_EQ(delta_thresholds[1], 1.25);
  EXPECT_EQ(delta_thresholds[2], 1.35);
  const auto gt = Image::generate(5, 5, 1, [](std::size_t y, std::size_t x, std::size_t) {
    return 0.1f + 0.02f * static_cast<float>(y * 5 + x);
  });
  const auto d = Image::generate(5, 5, 1, [&](std::size_t y, std::size_t x, std::size_t) {
    return 1.2f * gt(y, x);
  });
  for (double thr : delta_thresholds)
    EXPECT_EQ(delta_accuracy(gt, gt, thr), 1.0);
  EXPECT_EQ(delta_accuracy(d, gt, 1.15), 0.0);
  EXPECT_EQ(delta_accuracy(d, gt, 1.25), 1.0);
  EXPECT_EQ(delta_accuracy(gt, d, 1.25), 1.0);
  EXPECT_THROW(delta_accuracy(d, gt, 1.0), ArgumentError);
  EXPECT_THROW(delta_accuracy(Image::filled(2, 2, 1, 0.f), gt.filled(2, 2, 1, 0.5f), 1.25),
               DegenerateInputError);
}

TEST(Profile, ColumnCopies)
{
  std::vector<Image> frames;
  for (std::size_t t = 0; t < 6; ++t)
    frames.push_back(Image::generate(6, 4, 1, [&](std::size_t y, std::size_t, std::size_t) {
      return y == t ? 1.f : 0.f;  // bar moving down one row per frame
    }));
  const auto p = temporal_profile(FrameSequence(frames), 2);
  ASSERT_EQ(p.shape(), (Shape{6, 6, 1}));
  for (std::size_t y = 0; y < 6; ++y)
    for (std::size_t t = 0; t < 6; ++t)
      EXPECT_EQ(p(y, t), y == t ? 1.f : 0.f);
  std::mt19937_64 g(6);
  const auto f = sftest::random_image(g, 5, 5, 3);
  const auto one = temporal_profile(FrameSequence({f}), 3);
  for (std::size_t y = 0; y < 5; ++y)
    for (std::size_t c = 0; c < 3; ++c)
      EXPECT_EQ(one(y, 0, c), f(y, 3, c));
  EXPECT_THROW(temporal_profile(FrameSequence({f}), 5), BoundsError);
}

TEST(Tof, ZeroForIdenticalAndStaticVsTranslating)
{
  std::mt19937_64 g(7);
  const auto seq = sftest::random_sequence(g, 4, 16, 16);
  EXPECT_EQ(tof(seq, seq, 8, 2), 0.0);

  const auto base = sftest::random_image(g, 32, 64, 1);
  std::vector<Image> moving;
  for (std::size_t t = 0; t < 4; ++t)
    moving.push_back(Image::generate(32, 32, 1, [&](std::size_t y, std::size_t x, std::size_t) {
      return base(y, x + 16 - 2 * t);  // content moves right 2 px per frame
    }));
  const FrameSequence gt(moving);
  const FrameSequence still(std::vector<Image>(4, moving[0]));
  // Flow of every consecutive pair is (2, 0) on every tile; |0 - 2| and |0 - 0| average to 1.
  for (std::size_t t = 0; t + 1 < 4; ++t) {
    const auto f = flow::block_flow(moving[t], moving[t + 1], 8, 3);
    for (std::size_t p = 0; p < 32 * 32; ++p) {
      ASSERT_EQ(f[2 * p], 2.f);
      ASSERT_EQ(f[2 * p + 1], 0.f);
    }
  }
  EXPECT_EQ(tof(still, gt, 8, 3), 1.0);
  EXPECT_EQ(tof(still, gt, 8, 0), 0.0);
  EXPECT_THROW(tof(FrameSequence({moving[0]}), FrameSequence({moving[0]}), 8, 1), ArgumentError);
}
