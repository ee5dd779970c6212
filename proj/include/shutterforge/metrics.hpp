#ifndef SHUTTERFORGE_METRICS_HPP
#define SHUTTERFORGE_METRICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/flowops.hpp"
#include "shutterforge/tensor.hpp"

namespace shutterforge::metrics {

inline constexpr double default_psnr_cap_db = 100.0;
inline constexpr double default_valid_min = 1.0 / 255.0;
/// Ratio thresholds reported for alignment accuracy.
inline constexpr std::array<double, 3> delta_thresholds = {1.15, 1.25, 1.35};

inline double mse(const Image& a, const Image& b)
{
  require_same_shape(a, b, "mse");
  const auto x = a.data();
  const auto y = b.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x[i]) - y[i];
    acc += d * d;
  }
  return acc / static_cast<double>(x.size());
}

/// Peak signal-to-noise ratio for unit peak; exact matches report `cap_db`.
inline double psnr(const Image& a, const Image& b, double cap_db = default_psnr_cap_db)
{
  const double e = mse(a, b);
  if (e == 0.0)
    return cap_db;
  return -10.0 * std::log10(e);
}

namespace detail {

inline constexpr std::size_t ssim_window = 11;
inline constexpr double ssim_sigma = 1.5;
inline constexpr double ssim_k1 = 0.01;
inline constexpr double ssim_k2 = 0.03;

inline std::array<double, ssim_window> gaussian_taps()
{
  std::array<double, ssim_window> g{};
  const double centre = (ssim_window - 1) / 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < ssim_window; ++i) {
    const double d = static_cast<double>(i) - centre;
    g[i] = std::exp(-d * d / (2.0 * ssim_sigma * ssim_sigma));
    sum += g[i];
  }
  for (auto& v : g)
    v /= sum;
  return g;
}

// Separable Gaussian filter with replicate padding.
inline std::vector<double> gaussian_filter(const std::vector<double>& src, std::size_t h,
                                           std::size_t w)
{
  const auto g = gaussian_taps();
  const auto r = static_cast<std::ptrdiff_t>(ssim_window / 2);
  auto clampi = [](std::ptrdiff_t v, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(v, 0, static_cast<std::ptrdiff_t>(n) - 1));
  };
  std::vector<double> tmp(h * w);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -r; k <= r; ++k)
        acc += g[static_cast<std::size_t>(k + r)] * src[y * w + clampi(static_cast<std::ptrdiff_t>(x) + k, w)];
      tmp[y * w + x] = acc;
    }
  std::vector<double> out(h * w);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -r; k <= r; ++k)
        acc += g[static_cast<std::size_t>(k + r)] * tmp[clampi(static_cast<std::ptrdiff_t>(y) + k, h) * w + x];
      out[y * w + x] = acc;
    }
  return out;
}

}  // namespace detail

/// Mean structural similarity of the luminance planes: 11x11 Gaussian window
/// (sigma 1.5), K1 = 0.01, K2 = 0.03, unit dynamic range, replicate padding.
inline double ssim(const Image& a, const Image& b)
{
  require_same_shape(a, b, "ssim");
  if (a.height() < detail::ssim_window || a.width() < detail::ssim_window)
    throw ArgumentError("ssim: images of " + to_string(a.shape()) + " are smaller than the " +
                        std::to_string(detail::ssim_window) + "x" +
                        std::to_string(detail::ssim_window) + " window");
  const std::size_t h = a.height();
  const std::size_t w = a.width();
  const auto la = luminance(a);
  const auto lb = luminance(b);
  std::vector<double> aa(la.size()), bb(la.size()), ab(la.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    aa[i] = la[i] * la[i];
    bb[i] = lb[i] * lb[i];
    ab[i] = la[i] * lb[i];
  }
  const auto mu_a = detail::gaussian_filter(la, h, w);
  const auto mu_b = detail::gaussian_filter(lb, h, w);
  const auto e_aa = detail::gaussian_filter(aa, h, w);
  const auto e_bb = detail::gaussian_filter(bb, h, w);
  const auto e_ab = detail::gaussian_filter(ab, h, w);

  const double c1 = detail::ssim_k1 * detail::ssim_k1;
  const double c2 = detail::ssim_k2 * detail::ssim_k2;
  double acc = 0.0;
  for (std::size_t i = 0; i < la.size(); ++i) {
    const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
    const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
    const double cov = e_ab[i] - mu_a[i] * mu_b[i];
    const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
    const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
    acc += num / den;
  }
  return acc / static_cast<double>(la.size());
}

/// Mean |d - gt| / gt over pixels with gt >= valid_min.
inline double abs_rel(const Image& d, const Image& gt, double valid_min = default_valid_min)
{
  require_same_shape(d, gt, "abs_rel");
  const auto x = d.data();
  const auto g = gt.data();
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (g[i] < valid_min)
      continue;
    acc += std::abs(static_cast<double>(x[i]) - g[i]) / g[i];
    ++n;
  }
  if (n == 0)
    throw DegenerateInputError("abs_rel: no ground-truth values >= " + std::to_string(valid_min));
  return acc / static_cast<double>(n);
}

/// Fraction of pixels (both values >= valid_min) with max(d/gt, gt/d) < thr.
inline double delta_accuracy(const Image& d, const Image& gt, double thr,
                             double valid_min = default_valid_min)
{
  require_same_shape(d, gt, "delta_accuracy");
  if (!(thr > 1.0))
    throw ArgumentError("delta_accuracy: threshold must exceed 1");
  const auto x = d.data();
  const auto g = gt.data();
  std::size_t hits = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < valid_min || g[i] < valid_min)
      continue;
    const double ratio = std::max(static_cast<double>(x[i]) / g[i], static_cast<double>(g[i]) / x[i]);
    hits += ratio < thr ? 1 : 0;
    ++n;
  }
  if (n == 0)
    throw DegenerateInputError("delta_accuracy: no valid pixel pairs");
  return static_cast<double>(hits) / static_cast<double>(n);
}

/// H x T image whose column t is column `column` of frame t.
inline Image temporal_profile(const FrameSequence& seq, std::size_t column)
{
  if (column >= seq.width())
    throw BoundsError("temporal_profile: column " + std::to_string(column) + " outside width " +
                      std::to_string(seq.width()));
  return Image::generate(seq.height(), seq.size(), seq.channels(),
                         [&](std::size_t y, std::size_t t, std::size_t c) {
                           return seq[t](y, column, c);
                         });
}

/// Temporal flow consistency: mean over consecutive pairs of the per-pixel,
/// per-component |block_flow(pred) - block_flow(gt)|.
inline double tof(const FrameSequence& pred, const FrameSequence& gt, std::size_t block,
                  std::size_t radius)
{
  if (pred.size() < 2)
    throw ArgumentError("tof: sequences need at least 2 frames");
  require_same_shape(pred, gt, "tof");
  double acc = 0.0;
  for (std::size_t t = 0; t + 1 < pred.size(); ++t) {
    const auto fp = flow::block_flow(pred[t], pred[t + 1], block, radius);
    const auto fg = flow::block_flow(gt[t], gt[t + 1], block, radius);
    const auto a = fp.data();
    const auto b = fg.data();
    double pair = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      pair += std::abs(static_cast<double>(a[i]) - b[i]);
    acc += pair / static_cast<double>(a.size());
  }
  return acc / static_cast<double>(pred.size() - 1);
}

}  // namespace shutterforge::metrics

#endif  // SHUTTERFORGE_METRICS_HPP
