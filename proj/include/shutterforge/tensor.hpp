#ifndef SHUTTERFORGE_TENSOR_HPP
#define SHUTTERFORGE_TENSOR_HPP

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shutterforge/error.hpp"

namespace shutterforge {

/// Kind tag stored in byte 4 of the SFT container.
enum class TensorKind : std::uint8_t
{
  image = 0,
  flow = 1,
  mask = 2,
  encoding = 3,
};

struct Shape
{
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  std::size_t elements() const { return height * width * channels; }
  friend auto operator<=>(const Shape&, const Shape&) = default;
};

inline std::string to_string(const Shape& s)
{
  return std::to_string(s.height) + "x" + std::to_string(s.width) + "x" +
         std::to_string(s.channels);
}

namespace detail {

struct ImageTraits
{
  static constexpr const char* name = "Image";
  static constexpr bool serializable = true;
  static constexpr TensorKind kind = TensorKind::image;
  static bool channels_ok(std::size_t c) { return c == 1 || c == 3; }
  static bool admissible(float v, std::size_t) { return std::isfinite(v) && v >= 0.f && v <= 1.f; }
};

struct FlowTraits
{
  static constexpr const char* name = "FlowField";
  static constexpr bool serializable = true;
  static constexpr TensorKind kind = TensorKind::flow;
  static constexpr std::size_t fixed_channels = 2;
  static bool channels_ok(std::size_t c) { return c == 2; }
  static bool admissible(float v, std::size_t) { return std::isfinite(v); }
};

struct MaskTraits
{
  static constexpr const char* name = "MaskMap";
  static constexpr bool serializable = true;
  static constexpr TensorKind kind = TensorKind::mask;
  static constexpr std::size_t fixed_channels = 1;
  static bool channels_ok(std::size_t c) { return c == 1; }
  static bool admissible(float v, std::size_t) { return std::isfinite(v) && v >= 0.f && v <= 1.f; }
};

// Signed row offsets; the magnitude never exceeds the last row index.
struct EncodingTraits
{
  static constexpr const char* name = "EncodingMap";
  static constexpr bool serializable = true;
  static constexpr TensorKind kind = TensorKind::encoding;
  static constexpr std::size_t fixed_channels = 1;
  static bool channels_ok(std::size_t c) { return c == 1; }
  static bool admissible(float v, std::size_t height)
  {
    const float bound = height == 0 ? 0.f : static_cast<float>(height - 1);
    return std::isfinite(v) && v >= -bound && v <= bound;
  }
};

// Unrestricted finite scalar per pixel (e.g. flow magnitudes). Not serialized.
struct ScalarTraits
{
  static constexpr const char* name = "ScalarField";
  static constexpr bool serializable = false;
  static constexpr std::size_t fixed_channels = 1;
  static bool channels_ok(std::size_t c) { return c == 1; }
  static bool admissible(float v, std::size_t) { return std::isfinite(v); }
};

template <class T>
concept FixedChannels = requires { T::fixed_channels; };

}  // namespace detail

/// Immutable, validated, row-major H x W x C grid of f32 values.
///
/// Element (y, x, c) lives at index (y * W + x) * C + c; y grows downward
/// from the top-left origin. Every constructor validates the traits' value
/// domain eagerly and throws on the first offending element.
template <class Traits>
class Grid
{
public:
  using traits_type = Traits;

  Grid() = default;

  Grid(std::size_t height, std::size_t width, std::size_t channels, std::vector<float> data)
    : shape_{height, width, channels}
    , data_(std::move(data))
  {
    validate();
  }

  Grid(std::size_t height, std::size_t width, std::vector<float> data)
    requires detail::FixedChannels<Traits>
    : Grid(height, width, Traits::fixed_channels, std::move(data))
  {
  }

  static Grid filled(std::size_t height, std::size_t width, std::size_t channels, float value)
  {
    return Grid(height, width, channels, std::vector<float>(height * width * channels, value));
  }

  static Grid filled(std::size_t height, std::size_t width, float value)
    requires detail::FixedChannels<Traits>
  {
    return filled(height, width, Traits::fixed_channels, value);
  }

  /// Builds a grid from f(y, x, c).
  template <class F>
  static Grid generate(std::size_t height, std::size_t width, std::size_t channels, F&& f)
  {
    std::vector<float> data(height * width * channels);
    std::size_t i = 0;
    for (std::size_t y = 0; y < height; ++y)
      for (std::size_t x = 0; x < width; ++x)
        for (std::size_t c = 0; c < channels; ++c)
          data[i++] = static_cast<float>(f(y, x, c));
    return Grid(height, width, channels, std::move(data));
  }

  std::size_t height() const { return shape_.height; }
  std::size_t width() const { return shape_.width; }
  std::size_t channels() const { return shape_.channels; }
  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<const float> data() const& { return data_; }
  std::span<const float> data() const&& = delete;

  float operator()(std::size_t y, std::size_t x, std::size_t c = 0) const
  {
    return data_[(y * shape_.width + x) * shape_.channels + c];
  }

  float operator[](std::size_t i) const { return data_[i]; }

  /// Releases the payload, leaving an empty grid.
  std::vector<float> take_data() &&
  {
    shape_ = {};
    return std::move(data_);
  }

  friend bool operator==(const Grid& a, const Grid& b)
  {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

private:
  void validate() const
  {
    if (!Traits::channels_ok(shape_.channels))
      throw ShapeError(std::string(Traits::name) + ": invalid channel count " +
                       std::to_string(shape_.channels));
    if (shape_.height == 0 || shape_.width == 0)
      throw ShapeError(std::string(Traits::name) + ": zero-sized grid " + to_string(shape_));
    if (data_.size() != shape_.elements())
      throw ShapeError(std::string(Traits::name) + ": payload has " + std::to_string(data_.size()) +
                       " elements, shape " + to_string(shape_) + " needs " +
                       std::to_string(shape_.elements()));
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!Traits::admissible(data_[i], shape_.height))
        throw NumericError(std::string(Traits::name) + ": element " + std::to_string(i) +
                           " has inadmissible value " + std::to_string(data_[i]));
  }

  Shape shape_{};
  std::vector<float> data_;
};

using Image = Grid<detail::ImageTraits>;
using FlowField = Grid<detail::FlowTraits>;
using MaskMap = Grid<detail::MaskTraits>;
using EncodingMap = Grid<detail::EncodingTraits>;
using ScalarField = Grid<detail::ScalarTraits>;

template <class A, class B>
void require_same_extent(const Grid<A>& a, const Grid<B>& b, const char* op)
{
  if (a.height() != b.height() || a.width() != b.width())
    throw ShapeError(std::string(op) + ": spatial extents differ (" + to_string(a.shape()) +
                     " vs " + to_string(b.shape()) + ")");
}

template <class T>
void require_same_shape(const Grid<T>& a, const Grid<T>& b, const char* op)
{
  if (a.shape() != b.shape())
    throw ShapeError(std::string(op) + ": shapes differ (" + to_string(a.shape()) + " vs " +
                     to_string(b.shape()) + ")");
}

/// Exposure window over a frame sequence, in frame units.
struct ExposureSchedule
{
  std::size_t exposure_len = 1;
  std::size_t deadtime_len = 0;
  std::size_t window_start = 0;

  void validate() const
  {
    if (exposure_len < 1)
      throw ArgumentError("ExposureSchedule: exposure_len must be >= 1");
  }

  std::size_t window_end() const { return window_start + exposure_len; }
  std::size_t stride() const { return exposure_len + deadtime_len; }

  friend bool operator==(const ExposureSchedule&, const ExposureSchedule&) = default;
};

/// Ordered latent frames of identical shape plus the schedule they were captured with.
class FrameSequence
{
public:
  explicit FrameSequence(std::vector<Image> frames)
    : FrameSequence(std::move(frames), ExposureSchedule{})
  {
    schedule_.exposure_len = frames_.size();
  }

  FrameSequence(std::vector<Image> frames, ExposureSchedule schedule)
    : frames_(std::move(frames))
    , schedule_(schedule)
  {
    if (frames_.empty())
      throw ShapeError("FrameSequence: needs at least one frame");
    for (std::size_t i = 1; i < frames_.size(); ++i)
      if (frames_[i].shape() != frames_[0].shape())
        throw ShapeError("FrameSequence: frame " + std::to_string(i) + " has shape " +
                         to_string(frames_[i].shape()) + ", expected " +
                         to_string(frames_[0].shape()));
    schedule_.validate();
  }

  std::size_t size() const { return frames_.size(); }
  const Image& operator[](std::size_t i) const { return frames_[i]; }
  const std::vector<Image>& frames() const { return frames_; }
  const ExposureSchedule& schedule() const { return schedule_; }
  const Shape& shape() const { return frames_.front().shape(); }
  std::size_t height() const { return shape().height; }
  std::size_t width() const { return shape().width; }
  std::size_t channels() const { return shape().channels; }

  auto begin() const { return frames_.begin(); }
  auto end() const { return frames_.end(); }

  friend bool operator==(const FrameSequence& a, const FrameSequence& b)
  {
    return a.frames_ == b.frames_;
  }

private:
  std::vector<Image> frames_;
  ExposureSchedule schedule_;
};

inline void require_same_shape(const FrameSequence& a, const FrameSequence& b, const char* op)
{
  if (a.size() != b.size())
    throw ShapeError(std::string(op) + ": sequence lengths differ (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  if (a.shape() != b.shape())
    throw ShapeError(std::string(op) + ": frame shapes differ (" + to_string(a.shape()) + " vs " +
                     to_string(b.shape()) + ")");
}

/// Luminance (0.299 R + 0.587 G + 0.114 B) of a 1- or 3-channel image, as doubles.
inline std::vector<double> luminance(const Image& img)
{
  const std::size_t n = img.height() * img.width();
  std::vector<double> out(n);
  const auto d = img.data();
  if (img.channels() == 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = d[i];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = 0.299 * d[3 * i] + 0.587 * d[3 * i + 1] + 0.114 * d[3 * i + 2];
  }
  return out;
}

}  // namespace shutterforge

#endif  // SHUTTERFORGE_TENSOR_HPP
