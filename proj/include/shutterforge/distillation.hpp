#ifndef SHUTTERFORGE_DISTILLATION_HPP
#define SHUTTERFORGE_DISTILLATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/tensor.hpp"

// Region-adaptive distillation masks and the training objective built on them.

namespace shutterforge::distill {

inline constexpr double default_outlier_k = 2.0;
inline constexpr double default_charbonnier_eps = 1e-3;
inline constexpr double default_lambda_d = 1e-4;

/// Non-negative weights of the dynamic, boundary and error masks; they sum to one.
struct MaskWeights
{
  double w_d = 1.0 / 3.0;
  double w_b = 1.0 / 3.0;
  double w_e = 1.0 / 3.0;

  void validate() const
  {
    for (double w : {w_d, w_b, w_e})
      if (!(w >= 0.0 && w <= 1.0))
        throw ArgumentError("MaskWeights: each weight must lie in [0, 1]");
    if (std::abs(w_d + w_b + w_e - 1.0) > 1e-9)
      throw ArgumentError("MaskWeights: weights must sum to 1");
  }
};

/// Percentile with linear interpolation between order statistics
/// (h = (n - 1) p). `sorted` must be ascending and non-empty.
inline double percentile_sorted(std::span<const double> sorted, double p)
{
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Highly dynamic regions: 1 where |flow| > Q3 + k (Q3 - Q1), else 0.
inline MaskMap mask_dynamic(const FlowField& f, double k = default_outlier_k)
{
  if (!(k >= 0.0) || !std::isfinite(k))
    throw ArgumentError("mask_dynamic: k must be >= 0");
  const std::size_t n = f.height() * f.width();
  std::vector<double> mag(n);
  for (std::size_t p = 0; p < n; ++p)
    mag[p] = std::hypot(static_cast<double>(f[2 * p]), static_cast<double>(f[2 * p + 1]));
  std::vector<double> sorted = mag;
  std::sort(sorted.begin(), sorted.end());
  const double q1 = percentile_sorted(sorted, 0.25);
  const double q3 = percentile_sorted(sorted, 0.75);
  const double threshold = q3 + k * (q3 - q1);
  std::vector<float> out(n);
  for (std::size_t p = 0; p < n; ++p)
    out[p] = mag[p] > threshold ? 1.f : 0.f;
  return MaskMap(f.height(), f.width(), std::move(out));
}

/// Sobel gradient magnitude of a luminance plane with replicate padding.
inline std::vector<double> sobel_magnitude(std::span<const double> lum, std::size_t h,
                                           std::size_t w)
{
  auto at = [&](std::ptrdiff_t y, std::ptrdiff_t x) {
    y = std::clamp<std::ptrdiff_t>(y, 0, static_cast<std::ptrdiff_t>(h) - 1);
    x = std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(w) - 1);
    return lum[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)];
  };
  std::vector<double> out(h * w);
  for (std::size_t yy = 0; yy < h; ++yy) {
    for (std::size_t xx = 0; xx < w; ++xx) {
      const auto y = static_cast<std::ptrdiff_t>(yy);
      const auto x = static_cast<std::ptrdiff_t>(xx);
      const double gx = (at(y - 1, x + 1) + 2.0 * at(y, x + 1) + at(y + 1, x + 1)) -
                        (at(y - 1, x - 1) + 2.0 * at(y, x - 1) + at(y + 1, x - 1));
      const double gy = (at(y + 1, x - 1) + 2.0 * at(y + 1, x) + at(y + 1, x + 1)) -
                        (at(y - 1, x - 1) + 2.0 * at(y - 1, x) + at(y - 1, x + 1));
      out[yy * w + xx] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

/// Min-max normalised Sobel magnitude of one frame; all zero for a flat frame.
inline MaskMap boundary_mask(const Image& frame)
{
  const auto lum = luminance(frame);
  const auto g = sobel_magnitude(lum, frame.height(), frame.width());
  const auto [mn, mx] = std::minmax_element(g.begin(), g.end());
  const double lo = *mn;
  const double range = *mx - *mn;
  std::vector<float> out(g.size(), 0.f);
  if (range > 0.0)
    for (std::size_t i = 0; i < g.size(); ++i)
      out[i] = static_cast<float>(std::clamp((g[i] - lo) / range, 0.0, 1.0));
  return MaskMap(frame.height(), frame.width(), std::move(out));
}

/// Object-boundary masks, one per ground-truth frame.
inline std::vector<MaskMap> mask_boundary(const FrameSequence& gt)
{
  std::vector<MaskMap> out;
  out.reserve(gt.size());
  for (const auto& frame : gt)
    out.push_back(boundary_mask(frame));
  return out;
}

/// Low-confidence student regions, one mask per frame: 1 where the
/// channel-summed |student - gt| strictly exceeds the channel-summed |teacher - gt|.
inline std::vector<MaskMap> mask_error(const FrameSequence& student, const FrameSequence& teacher,
                                       const FrameSequence& gt)
{
  require_same_shape(student, gt, "mask_error");
  require_same_shape(teacher, gt, "mask_error");
  const std::size_t ch = gt.channels();
  const std::size_t n = gt.height() * gt.width();
  std::vector<MaskMap> out;
  out.reserve(gt.size());
  for (std::size_t t = 0; t < gt.size(); ++t) {
    const auto s = student[t].data();
    const auto te = teacher[t].data();
    const auto g = gt[t].data();
    std::vector<float> m(n);
    for (std::size_t p = 0; p < n; ++p) {
      double es = 0.0;
      double et = 0.0;
      for (std::size_t c = 0; c < ch; ++c) {
        es += std::abs(static_cast<double>(s[p * ch + c]) - g[p * ch + c]);
        et += std::abs(static_cast<double>(te[p * ch + c]) - g[p * ch + c]);
      }
      m[p] = es > et ? 1.f : 0.f;
    }
    out.emplace_back(gt.height(), gt.width(), std::move(m));
  }
  return out;
}

/// Weighted combination w_d m_d + w_b m_b + w_e m_e; the uniform default is the plain mean.
/// Values are clamped to [0, 1] to absorb rounding.
inline MaskMap mask_combine(const MaskMap& m_d, const MaskMap& m_b, const MaskMap& m_e,
                            const MaskWeights& w = {})
{
  w.validate();
  require_same_shape(m_d, m_b, "mask_combine");
  require_same_shape(m_d, m_e, "mask_combine");
  std::vector<float> out(m_d.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = w.w_d * m_d[i] + w.w_b * m_b[i] + w.w_e * m_e[i];
    out[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
  }
  return MaskMap(m_d.height(), m_d.width(), std::move(out));
}

/// Masked L1 distance between student and teacher flows, averaged over all
/// flows, pixels and both components. The mask is broadcast over components.
inline double loss_distill(std::span<const FlowField> student, std::span<const FlowField> teacher,
                           const MaskMap& m)
{
  if (student.size() != teacher.size())
    throw ShapeError("loss_distill: " + std::to_string(student.size()) + " student flows vs " +
                     std::to_string(teacher.size()) + " teacher flows");
  if (student.empty())
    throw ShapeError("loss_distill: no flows");
  double acc = 0.0;
  for (std::size_t i = 0; i < student.size(); ++i) {
    require_same_extent(student[i], teacher[i], "loss_distill");
    require_same_extent(student[i], m, "loss_distill");
    const auto a = student[i].data();
    const auto b = teacher[i].data();
    for (std::size_t p = 0; p < m.size(); ++p) {
      const double w = m[p];
      acc += w * std::abs(static_cast<double>(a[2 * p]) - b[2 * p]);
      acc += w * std::abs(static_cast<double>(a[2 * p + 1]) - b[2 * p + 1]);
    }
  }
  return acc / static_cast<double>(student.size() * m.size() * 2);
}

inline double loss_distill(const FlowField& student, const FlowField& teacher, const MaskMap& m)
{
  return loss_distill(std::span<const FlowField>(&student, 1), std::span<const FlowField>(&teacher, 1),
                      m);
}

enum class CharbonnierMode
{
  elementwise,  // mean over elements of sqrt(d^2 + eps^2)
  global,       // sqrt(||S - G||_2^2 + eps^2) over the whole clip
};

inline double loss_charbonnier(const FrameSequence& s, const FrameSequence& g,
                               double eps = default_charbonnier_eps,
                               CharbonnierMode mode = CharbonnierMode::elementwise)
{
  require_same_shape(s, g, "loss_charbonnier");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ArgumentError("loss_charbonnier: eps must be > 0");
  const double eps2 = eps * eps;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto a = s[t].data();
    const auto b = g[t].data();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = static_cast<double>(a[i]) - b[i];
      const double d2 = d * d;
      // sqrt(d^2 + eps^2) - eps, in a form without cancellation
      acc += mode == CharbonnierMode::elementwise ? d2 / (std::sqrt(d2 + eps2) + eps) : d2;
    }
    count += a.size();
  }
  if (mode == CharbonnierMode::global)
    return std::sqrt(acc + eps2);
  return eps + acc / static_cast<double>(count);
}

/// l_rec + l_rec_t + lambda_d l_dis.
inline double loss_total(double l_rec, double l_rec_t, double l_dis,
                         double lambda_d = default_lambda_d)
{
  for (double v : {l_rec, l_rec_t, l_dis, lambda_d})
    if (!std::isfinite(v))
      throw NumericError("loss_total: non-finite input");
  return l_rec + l_rec_t + lambda_d * l_dis;
}

}  // namespace shutterforge::distill

#endif  // SHUTTERFORGE_DISTILLATION_HPP
