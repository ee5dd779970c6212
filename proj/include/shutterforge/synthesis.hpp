#ifndef SHUTTERFORGE_SYNTHESIS_HPP
#define SHUTTERFORGE_SYNTHESIS_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/parallel.hpp"
#include "shutterforge/tensor.hpp"

namespace shutterforge::synthesis {

/// One aligned observation: the blurred GS view, the RS view and the latent
/// target frames, all produced from the same exposure window.
struct TripleSample
{
  Image blur;
  Image rs;
  FrameSequence gt;
  std::size_t window_start = 0;
  std::size_t exposure_len = 0;
  std::size_t n_latent = 0;
};

inline void require_window(const FrameSequence& seq, const ExposureSchedule& window,
                           const char* op)
{
  window.validate();
  if (window.window_end() > seq.size())
    throw BoundsError(std::string(op) + ": window [" + std::to_string(window.window_start) + ", " +
                      std::to_string(window.window_end()) + ") exceeds sequence of " +
                      std::to_string(seq.size()) + " frames");
}

/// Global-shutter blur: per-pixel arithmetic mean of the frames in the exposure window.
inline Image blur_synthesize(const FrameSequence& seq, const ExposureSchedule& window)
{
  require_window(seq, window, "blur_synthesize");
  const std::size_t n = seq[0].size();
  std::vector<double> acc(n, 0.0);
  for (std::size_t t = window.window_start; t < window.window_end(); ++t) {
    const auto d = seq[t].data();
    for (std::size_t i = 0; i < n; ++i)
      acc[i] += d[i];
  }
  const double len = static_cast<double>(window.exposure_len);
  std::vector<float> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<float>(acc[i] / len);
  return Image(seq.height(), seq.width(), seq.channels(), std::move(out));
}

/// Rolling-shutter readout: row k is copied from frame window_start + k.
/// The window must be exactly one frame per image row.
inline Image rs_synthesize(const FrameSequence& seq, const ExposureSchedule& window)
{
  if (window.exposure_len != seq.height())
    throw ShapeError("rs_synthesize: exposure_len " + std::to_string(window.exposure_len) +
                     " must equal frame height " + std::to_string(seq.height()));
  require_window(seq, window, "rs_synthesize");
  const std::size_t row = seq.width() * seq.channels();
  std::vector<float> out(seq[0].size());
  for (std::size_t k = 0; k < seq.height(); ++k) {
    const auto src = seq[window.window_start + k].data().subspan(k * row, row);
    std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(k * row));
  }
  return Image(seq.height(), seq.width(), seq.channels(), std::move(out));
}

/// Window-relative indices round(t (L-1) / (n-1)), t = 0..n-1.
inline std::vector<std::size_t> latent_indices(std::size_t window_len, std::size_t n)
{
  if (n < 2)
    throw ArgumentError("sample_latent_targets: n must be >= 2");
  if (n > window_len)
    throw ArgumentError("sample_latent_targets: n = " + std::to_string(n) +
                        " exceeds window length " + std::to_string(window_len));
  std::vector<std::size_t> idx(n);
  for (std::size_t t = 0; t < n; ++t)
    idx[t] = static_cast<std::size_t>(
      std::lround(static_cast<double>(t * (window_len - 1)) / static_cast<double>(n - 1)));
  return idx;
}

/// Endpoint-inclusive uniform subsample of n latent frames from the window.
inline FrameSequence sample_latent_targets(const FrameSequence& seq,
                                           const ExposureSchedule& window, std::size_t n)
{
  require_window(seq, window, "sample_latent_targets");
  std::vector<Image> frames;
  frames.reserve(n);
  for (std::size_t i : latent_indices(window.exposure_len, n))
    frames.push_back(seq[window.window_start + i]);
  return FrameSequence(std::move(frames), ExposureSchedule{n, 0, 0});
}

/// Central crop to size x size, offset floor((dim - size) / 2).
inline Image center_crop(const Image& img, std::size_t size)
{
  if (size == 0 || size > img.height() || size > img.width())
    throw ArgumentError("center_crop: crop " + std::to_string(size) + " does not fit " +
                        to_string(img.shape()));
  const std::size_t y0 = (img.height() - size) / 2;
  const std::size_t x0 = (img.width() - size) / 2;
  return Image::generate(size, size, img.channels(), [&](std::size_t y, std::size_t x,
                                                          std::size_t c) {
    return img(y0 + y, x0 + x, c);
  });
}

/// Number of complete windows of length `exposure` at stride exposure + deadtime.
inline std::size_t window_count(std::size_t frames, std::size_t exposure, std::size_t deadtime)
{
  if (exposure == 0 || frames < exposure)
    return 0;
  return (frames - exposure) / (exposure + deadtime) + 1;
}

struct TripleConfig
{
  std::size_t exposure_len = 0;
  std::size_t deadtime_len = 0;
  std::size_t n_latent = 9;
  std::size_t crop = 0;
};

/// Tiles the cropped sequence into disjoint exposure windows and emits one
/// aligned Blur/RS/GT triple per window. The exposure length must equal the
/// crop size so each RS row maps to one frame.
inline std::vector<TripleSample> synthesize_triples(const FrameSequence& seq,
                                                    const TripleConfig& cfg)
{
  if (cfg.crop == 0 || cfg.crop > seq.height() || cfg.crop > seq.width())
    throw ArgumentError("synthesize_triples: crop " + std::to_string(cfg.crop) +
                        " does not fit frames of " + to_string(seq.shape()));
  if (cfg.exposure_len != cfg.crop)
    throw ArgumentError("synthesize_triples: exposure_len " + std::to_string(cfg.exposure_len) +
                        " must equal crop " + std::to_string(cfg.crop));
  if (cfg.n_latent < 2 || cfg.n_latent > cfg.exposure_len)
    throw ArgumentError("synthesize_triples: n_latent must be in [2, exposure_len]");
  if (seq.size() < cfg.exposure_len)
    throw PipelineError("synthesize_triples: need at least " + std::to_string(cfg.exposure_len) +
                        " frames for one window, got " + std::to_string(seq.size()));

  const std::size_t count = window_count(seq.size(), cfg.exposure_len, cfg.deadtime_len);
  const std::size_t stride = cfg.exposure_len + cfg.deadtime_len;
  std::vector<Image> cropped(seq.size());
  parallel_for(seq.size(), [&](std::size_t t) { cropped[t] = center_crop(seq[t], cfg.crop); });
  const FrameSequence work(std::move(cropped));

  std::vector<std::optional<TripleSample>> slots(count);
  parallel_for(count, [&](std::size_t w) {
    const ExposureSchedule window{cfg.exposure_len, cfg.deadtime_len, w * stride};
    slots[w] = TripleSample{blur_synthesize(work, window), rs_synthesize(work, window),
                            sample_latent_targets(work, window, cfg.n_latent), window.window_start,
                            cfg.exposure_len, cfg.n_latent};
  });
  std::vector<TripleSample> out;
  out.reserve(count);
  for (auto& s : slots)
    out.push_back(std::move(*s));
  return out;
}

}  // namespace shutterforge::synthesis

#endif  // SHUTTERFORGE_SYNTHESIS_HPP
