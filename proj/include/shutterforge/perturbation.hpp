#ifndef SHUTTERFORGE_PERTURBATION_HPP
#define SHUTTERFORGE_PERTURBATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/flowops.hpp"
#include "shutterforge/parallel.hpp"
#include "shutterforge/rng.hpp"
#include "shutterforge/synthesis.hpp"
#include "shutterforge/tensor.hpp"

// Seeded robustness perturbations: spatial misalignment, exposure delay,
// low-light noise and stereo disparity. Every function is a pure function of
// its inputs and seed.

namespace shutterforge::perturb {

enum class Kind
{
  spatial_shift,
  temporal_shift,
  low_light,
  stereo,
};

inline std::string_view to_string(Kind k)
{
  switch (k) {
    case Kind::spatial_shift:
      return "spatial_shift";
    case Kind::temporal_shift:
      return "temporal_shift";
    case Kind::low_light:
      return "low_light";
    case Kind::stereo:
      return "stereo";
  }
  return "unknown";
}

inline Kind kind_from_string(std::string_view s)
{
  for (Kind k : {Kind::spatial_shift, Kind::temporal_shift, Kind::low_light, Kind::stereo})
    if (s == to_string(k))
      return k;
  throw ArgumentError("unknown perturbation kind '" + std::string(s) + "'");
}

/// Default gamma range for low-light synthesis.
inline constexpr double default_gamma_lo = 2.0;
inline constexpr double default_gamma_hi = 3.5;

/// One perturbation and its parameters. Only the fields of `kind` are meaningful.
struct PerturbSpec
{
  Kind kind = Kind::spatial_shift;
  std::uint64_t seed = 0;

  std::int64_t max_offset = 0;  // spatial_shift

  std::int64_t delta_lo = 5;  // temporal_shift
  std::int64_t delta_hi = 15;

  double peak = 500.0;  // low_light
  double gamma_lo = default_gamma_lo;
  double gamma_hi = default_gamma_hi;

  double d_up = 20.0;                 // stereo
  double disparity = 1.0;             // constant map value when no path is given
  std::string disparity_path;         // optional SFT MaskMap

  void validate() const
  {
    switch (kind) {
      case Kind::spatial_shift:
        if (max_offset < 0)
          throw ArgumentError("spatial_shift: max_offset must be >= 0");
        break;
      case Kind::temporal_shift:
        if (delta_lo > delta_hi)
          throw ArgumentError("temporal_shift: delta range lo > hi");
        break;
      case Kind::low_light:
        if (!(peak > 0.0) || !std::isfinite(peak))
          throw ArgumentError("low_light: peak must be > 0");
        if (!(gamma_lo > 0.0) || !(gamma_lo <= gamma_hi) || !std::isfinite(gamma_hi))
          throw ArgumentError("low_light: need 0 < gamma_lo <= gamma_hi");
        break;
      case Kind::stereo:
        if (!(d_up >= 0.0) || !std::isfinite(d_up))
          throw ArgumentError("stereo: d_up must be >= 0");
        if (!(disparity >= 0.0 && disparity <= 1.0))
          throw ArgumentError("stereo: constant disparity must lie in [0, 1]");
        break;
    }
  }
};

struct ShiftResult
{
  Image image;
  std::int64_t dx = 0;
  std::int64_t dy = 0;
};

/// Translates an image by a displacement: out(y, x) = img(y - dy, x - dx),
/// source indices replicate-clamped.
inline Image translate(const Image& img, std::int64_t dx, std::int64_t dy)
{
  const auto h = static_cast<std::int64_t>(img.height());
  const auto w = static_cast<std::int64_t>(img.width());
  return Image::generate(img.height(), img.width(), img.channels(),
                         [&](std::size_t y, std::size_t x, std::size_t c) {
                           const auto sy = std::clamp<std::int64_t>(static_cast<std::int64_t>(y) - dy, 0, h - 1);
                           const auto sx = std::clamp<std::int64_t>(static_cast<std::int64_t>(x) - dx, 0, w - 1);
                           return img(static_cast<std::size_t>(sy), static_cast<std::size_t>(sx), c);
                         });
}

/// Random integer translation with dx, dy uniform in [-max_offset, max_offset].
inline ShiftResult spatial_shift(const Image& img, std::int64_t max_offset, std::uint64_t seed)
{
  if (max_offset < 0)
    throw ArgumentError("spatial_shift: max_offset must be >= 0");
  if (static_cast<std::size_t>(max_offset) >= std::min(img.height(), img.width()))
    throw ArgumentError("spatial_shift: max_offset " + std::to_string(max_offset) +
                        " must be below min(H, W) of " + shutterforge::to_string(img.shape()));
  rng::Stream s(seed, 0);
  const std::int64_t dx = s.uniform_int(-max_offset, max_offset);
  const std::int64_t dy = s.uniform_int(-max_offset, max_offset);
  return {translate(img, dx, dy), dx, dy};
}

struct DelayResult
{
  Image image;
  std::int64_t delta = 0;
};

/// RS view whose exposure starts delta frames late, delta uniform in [lo, hi].
inline DelayResult temporal_shift_rs(const FrameSequence& seq, const ExposureSchedule& window,
                                     std::int64_t delta_lo, std::int64_t delta_hi,
                                     std::uint64_t seed)
{
  if (delta_lo > delta_hi)
    throw ArgumentError("temporal_shift_rs: delta range lo > hi");
  const auto start = static_cast<std::int64_t>(window.window_start);
  const auto height = static_cast<std::int64_t>(seq.height());
  if (start + delta_lo < 0)
    throw BoundsError("temporal_shift_rs: delta_lo moves the window before frame 0");
  if (start + delta_hi + height > static_cast<std::int64_t>(seq.size()))
    throw BoundsError("temporal_shift_rs: need " + std::to_string(start + delta_hi + height) +
                      " frames for delta_hi = " + std::to_string(delta_hi) + ", sequence has " +
                      std::to_string(seq.size()));
  rng::Stream s(seed, 0);
  const std::int64_t delta = s.uniform_int(delta_lo, delta_hi);
  ExposureSchedule shifted = window;
  shifted.window_start = static_cast<std::size_t>(start + delta);
  return {synthesis::rs_synthesize(seq, shifted), delta};
}

struct LowLightResult
{
  Image image;
  double gamma = 1.0;
};

/// Gamma darkening followed by photon noise at a fixed gamma:
/// y = Poisson(clamp(x, 0, 1)^gamma * peak) / peak, clamped to [0, 1].
/// Element i draws from its own stream (seed, i + 1).
inline Image low_light_fixed_gamma(const Image& img, double peak, double gamma,
                                   std::uint64_t seed)
{
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw ArgumentError("low_light: peak must be > 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ArgumentError("low_light: gamma must be > 0");
  const auto in = img.data();
  std::vector<float> out(in.size());
  const std::size_t row = img.width() * img.channels();
  parallel_for(img.height(), [&](std::size_t y) {
    for (std::size_t i = y * row; i < (y + 1) * row; ++i) {
      const double x = std::clamp(static_cast<double>(in[i]), 0.0, 1.0);
      rng::Stream s(seed, i + 1);
      const double count = static_cast<double>(rng::poisson(s, std::pow(x, gamma) * peak));
      out[i] = static_cast<float>(std::min(count / peak, 1.0));
    }
  });
  return Image(img.height(), img.width(), img.channels(), std::move(out));
}

/// Low-light simulation with gamma drawn uniformly in [gamma_lo, gamma_hi] from stream (seed, 0).
/// Noise is applied after the gamma curve.
inline LowLightResult low_light(const Image& img, double peak, double gamma_lo, double gamma_hi,
                                std::uint64_t seed)
{
  if (!(gamma_lo > 0.0) || !(gamma_lo <= gamma_hi) || !std::isfinite(gamma_hi))
    throw ArgumentError("low_light: need 0 < gamma_lo <= gamma_hi");
  rng::Stream s(seed, 0);
  const double gamma = s.uniform(gamma_lo, gamma_hi);
  return {low_light_fixed_gamma(img, peak, gamma, seed), gamma};
}

/// Synthetic stereo view: horizontal backward warp by d_up * disparity(p).
inline Image stereo_shift(const Image& img, const MaskMap& disparity, double d_up)
{
  require_same_extent(img, disparity, "stereo_shift");
  if (!(d_up >= 0.0) || !std::isfinite(d_up))
    throw ArgumentError("stereo_shift: d_up must be >= 0");
  if (d_up == 0.0)
    return img;
  const auto disp = disparity.data();
  std::vector<float> f(2 * disp.size(), 0.f);
  for (std::size_t p = 0; p < disp.size(); ++p)
    f[2 * p] = static_cast<float>(d_up * disp[p]);
  return flow::backward_warp(img, FlowField(img.height(), img.width(), std::move(f)));
}

}  // namespace shutterforge::perturb

#endif  // SHUTTERFORGE_PERTURBATION_HPP
