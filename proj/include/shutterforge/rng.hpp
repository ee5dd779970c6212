#ifndef SHUTTERFORGE_RNG_HPP
#define SHUTTERFORGE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "shutterforge/error.hpp"

namespace shutterforge::rng {

inline constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based random stream keyed by (seed, stream id).
///
/// Each pixel, window or draw site gets its own stream id, so results do not
/// depend on evaluation order or thread count. All distributions are written
/// out here so that outputs are identical across standard library
/// implementations.
class Stream
{
public:
  Stream(std::uint64_t seed, std::uint64_t stream_id)
    : state_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL)))
  {
  }

  std::uint64_t next()
  {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi]; returns lo when the interval is degenerate.
  double uniform(double lo, double hi) { return lo == hi ? lo : lo + (hi - lo) * uniform01(); }

  /// Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n)
  {
    if (n == 0)
      throw ArgumentError("rng: empty range");
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      if (r >= limit)
        return r % n;
    }
  }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
  {
    if (lo > hi)
      throw ArgumentError("rng: lo > hi");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
      return static_cast<std::int64_t>(next());
    return lo + static_cast<std::int64_t>(below(span));
  }

  /// Standard normal by Box-Muller (one variate per call).
  double normal()
  {
    double u1 = uniform01();
    while (u1 <= 0.0)
      u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::uint64_t state_;
};

/// Means above this use a rounded normal approximation.
inline constexpr double poisson_normal_cutover = 1000.0;

/// Poisson variate.
///
/// For mean <= 1000 this is exact sequential-search inversion. The mean is
/// split into chunks of at most 500 and the per-chunk variates summed, which
/// keeps exp(-chunk) representable. Above 1000 it returns
/// max(0, round(mean + sqrt(mean) * z)).
inline std::uint64_t poisson(Stream& s, double mean)
{
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw ArgumentError("poisson: mean must be finite and non-negative");
  if (mean == 0.0)
    return 0;
  if (mean > poisson_normal_cutover) {
    const double v = std::round(mean + std::sqrt(mean) * s.normal());
    return v <= 0.0 ? 0 : static_cast<std::uint64_t>(v);
  }
  const int chunks = static_cast<int>(std::ceil(mean / 500.0));
  const double lambda = mean / chunks;
  const double p0 = std::exp(-lambda);
  std::uint64_t total = 0;
  for (int c = 0; c < chunks; ++c) {
    const double u = s.uniform01();
    std::uint64_t k = 0;
    double p = p0;
    double cdf = p0;
    while (u > cdf) {
      ++k;
      p *= lambda / static_cast<double>(k);
      if (p == 0.0)
        break;  // remaining tail mass is below double resolution
      cdf += p;
    }
    total += k;
  }
  return total;
}

}  // namespace shutterforge::rng

#endif  // SHUTTERFORGE_RNG_HPP
