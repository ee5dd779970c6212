#ifndef SHUTTERFORGE_FLOWOPS_HPP
#define SHUTTERFORGE_FLOWOPS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/parallel.hpp"
#include "shutterforge/tensor.hpp"

namespace shutterforge::flow {

/// Bilinear sample of channel c at (x, y). The coordinate is first clamped to
/// [0, W-1] x [0, H-1]; the result is clamped to the hull of the four taps so
/// double-to-float rounding can never leave it.
inline float sample_bilinear(const Image& img, double x, double y, std::size_t c)
{
  const double max_x = static_cast<double>(img.width() - 1);
  const double max_y = static_cast<double>(img.height() - 1);
  x = std::clamp(x, 0.0, max_x);
  y = std::clamp(y, 0.0, max_y);
  const double fx0 = std::floor(x);
  const double fy0 = std::floor(y);
  const auto x0 = static_cast<std::size_t>(fx0);
  const auto y0 = static_cast<std::size_t>(fy0);
  const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
  const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
  const double ax = x - fx0;
  const double ay = y - fy0;

  const float v00 = img(y0, x0, c);
  const float v01 = img(y0, x1, c);
  const float v10 = img(y1, x0, c);
  const float v11 = img(y1, x1, c);
  const double v = (1.0 - ay) * ((1.0 - ax) * v00 + ax * v01) + ay * ((1.0 - ax) * v10 + ax * v11);
  const float lo = std::min({v00, v01, v10, v11});
  const float hi = std::max({v00, v01, v10, v11});
  return std::clamp(static_cast<float>(v), lo, hi);
}

/// output(p) = img sampled bilinearly at p + flow(p), coordinates clamped to the image.
inline Image backward_warp(const Image& img, const FlowField& f)
{
  require_same_extent(img, f, "backward_warp");
  const std::size_t ch = img.channels();
  std::vector<float> out(img.size());
  parallel_for(img.height(), [&](std::size_t y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const double sx = static_cast<double>(x) + f(y, x, 0);
      const double sy = static_cast<double>(y) + f(y, x, 1);
      for (std::size_t c = 0; c < ch; ++c)
        out[(y * img.width() + x) * ch + c] = sample_bilinear(img, sx, sy, c);
    }
  });
  return Image(img.height(), img.width(), ch, std::move(out));
}

/// Motion-residue prompt: element-wise f_b - f_r.
inline FlowField flow_diff(const FlowField& f_b, const FlowField& f_r)
{
  require_same_extent(f_b, f_r, "flow_diff");
  const auto a = f_b.data();
  const auto b = f_r.data();
  std::vector<float> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] - b[i];
  return FlowField(f_b.height(), f_b.width(), std::move(out));
}

/// Convex blend m a + (1 - m) b, mask broadcast over channels. The result is
/// clamped to [min(a, b), max(a, b)] to absorb rounding.
inline Image aggregate_warped(const Image& a, const Image& b, const MaskMap& m)
{
  require_same_shape(a, b, "aggregate_warped");
  require_same_extent(a, m, "aggregate_warped");
  const std::size_t ch = a.channels();
  std::vector<float> out(a.size());
  for (std::size_t p = 0; p < m.size(); ++p) {
    const double w = m[p];
    for (std::size_t c = 0; c < ch; ++c) {
      const float va = a[p * ch + c];
      const float vb = b[p * ch + c];
      const double v = w * va + (1.0 - w) * vb;
      out[p * ch + c] = std::clamp(static_cast<float>(v), std::min(va, vb), std::max(va, vb));
    }
  }
  return Image(a.height(), a.width(), ch, std::move(out));
}

/// Per-pixel Euclidean norm of the displacement.
inline ScalarField flow_magnitude(const FlowField& f)
{
  std::vector<float> out(f.height() * f.width());
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = static_cast<float>(std::hypot(static_cast<double>(f[2 * p]),
                                           static_cast<double>(f[2 * p + 1])));
  return ScalarField(f.height(), f.width(), std::move(out));
}

/// Exhaustive block matching.
///
/// For each block x block tile of `a`, finds the integer displacement d in
/// [-radius, radius]^2 minimising sum_p sum_c |a(p) - b(p + d)| with `b`
/// sampled under replicate clamp. Ties go to the smaller |d|^2, then to the
/// lexicographically smaller (dy, dx). The winner is written to every pixel
/// of the tile as (dx, dy).
inline FlowField block_flow(const Image& a, const Image& b, std::size_t block, std::size_t radius)
{
  require_same_shape(a, b, "block_flow");
  if (block == 0 || a.height() % block != 0 || a.width() % block != 0)
    throw ArgumentError("block_flow: block " + std::to_string(block) +
                        " must divide image dimensions " + to_string(a.shape()));
  const std::size_t h = a.height();
  const std::size_t w = a.width();
  const std::size_t ch = a.channels();
  const auto r = static_cast<std::int64_t>(radius);
  const std::size_t bx_count = w / block;
  const std::size_t by_count = h / block;
  std::vector<float> out(h * w * 2, 0.f);

  auto clamp_idx = [](std::int64_t v, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::int64_t>(v, 0, static_cast<std::int64_t>(n) - 1));
  };

  parallel_for(bx_count * by_count, [&](std::size_t tile) {
    const std::size_t by = tile / bx_count;
    const std::size_t bx = tile % bx_count;
    double best_sad = std::numeric_limits<double>::infinity();
    std::int64_t best_dx = 0;
    std::int64_t best_dy = 0;
    for (std::int64_t dy = -r; dy <= r; ++dy) {
      for (std::int64_t dx = -r; dx <= r; ++dx) {
        double sad = 0.0;
        for (std::size_t y = by * block; y < (by + 1) * block; ++y) {
          const std::size_t sy = clamp_idx(static_cast<std::int64_t>(y) + dy, h);
          for (std::size_t x = bx * block; x < (bx + 1) * block; ++x) {
            const std::size_t sx = clamp_idx(static_cast<std::int64_t>(x) + dx, w);
            for (std::size_t c = 0; c < ch; ++c)
              sad += std::abs(static_cast<double>(a(y, x, c)) - static_cast<double>(b(sy, sx, c)));
          }
        }
        const std::int64_t mag = dx * dx + dy * dy;
        const std::int64_t best_mag = best_dx * best_dx + best_dy * best_dy;
        // Scan order is already lexicographic in (dy, dx), so strict
        // comparisons keep the earliest candidate among exact ties.
        if (sad < best_sad || (sad == best_sad && mag < best_mag)) {
          best_sad = sad;
          best_dx = dx;
          best_dy = dy;
        }
      }
    }
    for (std::size_t y = by * block; y < (by + 1) * block; ++y)
      for (std::size_t x = bx * block; x < (bx + 1) * block; ++x) {
        out[2 * (y * w + x)] = static_cast<float>(best_dx);
        out[2 * (y * w + x) + 1] = static_cast<float>(best_dy);
      }
  });
  return FlowField(h, w, std::move(out));
}

}  // namespace shutterforge::flow

#endif  // SHUTTERFORGE_FLOWOPS_HPP
