#ifndef SHUTTERFORGE_ENCODING_HPP
#define SHUTTERFORGE_ENCODING_HPP

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/tensor.hpp"

// Temporal positional encodings relating RS row readout times to latent frame
// timestamps, in raw row units.

namespace shutterforge::encoding {

namespace detail {

inline void require_dims(std::size_t height, std::size_t width)
{
  if (height < 2)
    throw ArgumentError("temporal encoding: height must be >= 2");
  if (height > (std::size_t{1} << 23))
    throw ArgumentError("temporal encoding: height must be <= 2^23");
  if (width < 1)
    throw ArgumentError("temporal encoding: width must be >= 1");
}

inline void require_latent(std::size_t n_latent, std::size_t t)
{
  if (n_latent < 2)
    throw ArgumentError("temporal encoding: n_latent must be >= 2");
  if (t >= n_latent)
    throw ArgumentError("temporal encoding: frame index " + std::to_string(t) +
                        " out of range for " + std::to_string(n_latent) + " latent frames");
}

// Latent timestamp (H-1) t / (N-1) rounded (halves up) to a multiple of
// 2^(floor(log2(H-1)) - 23), the f32 spacing at the largest row index. On that
// grid k - timestamp is representable for every row k, so relative maps have
// an exact unit row step.
inline float latent_value(std::size_t height, std::size_t n_latent, std::size_t t)
{
  const std::size_t m = height - 1;
  const int shift = 23 - std::bit_width(m) + 1;
  const auto num = static_cast<std::uint64_t>(m * t) << shift;
  const std::uint64_t den = n_latent - 1;
  const std::uint64_t units = (2 * num + den) / (2 * den);
  return static_cast<float>(std::ldexp(static_cast<double>(units), -shift));
}

inline EncodingMap row_map(std::size_t height, std::size_t width, auto&& value_of_row)
{
  std::vector<float> data(height * width);
  for (std::size_t k = 0; k < height; ++k) {
    const float v = value_of_row(k);
    for (std::size_t x = 0; x < width; ++x)
      data[k * width + x] = v;
  }
  return EncodingMap(height, width, std::move(data));
}

}  // namespace detail

/// Readout time of every RS pixel: row k holds k.
inline EncodingMap tpe_rs(std::size_t height, std::size_t width = 1)
{
  detail::require_dims(height, width);
  return detail::row_map(height, width, [](std::size_t k) { return static_cast<float>(k); });
}

/// Constant map (H-1) t / (N-1): latent frame t's timestamp in row units,
/// exact when integral and otherwise within 2^(floor(log2(H-1)) - 24).
inline EncodingMap tpe_latent(std::size_t height, std::size_t n_latent, std::size_t t,
                              std::size_t width = 1)
{
  detail::require_dims(height, width);
  detail::require_latent(n_latent, t);
  return EncodingMap::filled(height, width, detail::latent_value(height, n_latent, t));
}

/// Relative encodings tpe_rs - tpe_latent(t) for t = 0..N-1.
inline std::vector<EncodingMap> tpe_relative(std::size_t height, std::size_t n_latent,
                                             std::size_t width = 1)
{
  detail::require_dims(height, width);
  detail::require_latent(n_latent, 0);
  std::vector<EncodingMap> maps;
  maps.reserve(n_latent);
  for (std::size_t t = 0; t < n_latent; ++t) {
    const float c = detail::latent_value(height, n_latent, t);
    maps.push_back(detail::row_map(height, width, [&](std::size_t k) {
      return static_cast<float>(k) - c;
    }));
  }
  return maps;
}

}  // namespace shutterforge::encoding

#endif  // SHUTTERFORGE_ENCODING_HPP
