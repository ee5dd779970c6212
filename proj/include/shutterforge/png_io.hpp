#ifndef SHUTTERFORGE_PNG_IO_HPP
#define SHUTTERFORGE_PNG_IO_HPP

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/tensor.hpp"

namespace shutterforge::png {

namespace detail {

struct FileCloser
{
  void operator()(std::FILE* f) const
  {
    if (f)
      std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline void on_error(png_structp ptr, png_const_charp msg)
{
  auto* buf = static_cast<std::string*>(png_get_error_ptr(ptr));
  if (buf)
    *buf = msg;
  png_longjmp(ptr, 1);
}

inline void on_warning(png_structp, png_const_charp) {}

struct Header
{
  std::size_t width = 0;
  std::size_t height = 0;
  int bit_depth = 0;
  int color_type = 0;
};

}  // namespace detail

/// Reads a grayscale or RGB PNG of 8 or 16 bits. Values are divided by 2^depth - 1.
/// When `bit_depth` is given it must match the file.
inline Image import(const std::filesystem::path& path, std::optional<int> bit_depth = std::nullopt)
{
  if (bit_depth && *bit_depth != 8 && *bit_depth != 16)
    throw ArgumentError("png import: bit depth must be 8 or 16");

  detail::FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file)
    throw IoError("cannot open " + path.string() + " for reading");

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, detail::on_error,
                                           detail::on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng initialisation failed");
  }

  detail::Header h;
  std::vector<std::uint8_t> raw;
  std::vector<png_bytep> rows;
  std::string failure;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png import " + path.string() + ": " + message);
  }

  png_init_io(png, file.get());
  png_read_info(png, info);
  h.width = png_get_image_width(png, info);
  h.height = png_get_image_height(png, info);
  h.bit_depth = png_get_bit_depth(png, info);
  h.color_type = png_get_color_type(png, info);

  if (h.color_type != PNG_COLOR_TYPE_GRAY && h.color_type != PNG_COLOR_TYPE_RGB)
    failure = "unsupported color type " + std::to_string(h.color_type) +
              " (only grayscale and RGB)";
  if (failure.empty() && h.bit_depth != 8 && h.bit_depth != 16)
    failure = "unsupported bit depth " + std::to_string(h.bit_depth);
  if (failure.empty() && bit_depth && *bit_depth != h.bit_depth)
    failure = "file has bit depth " + std::to_string(h.bit_depth) + ", requested " +
              std::to_string(*bit_depth);

  if (failure.empty()) {
    if (h.bit_depth == 16)
      png_set_swap(png);  // host little-endian order for 16-bit samples
    png_read_update_info(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    raw.resize(rowbytes * h.height);
    rows.resize(h.height);
    for (std::size_t y = 0; y < h.height; ++y)
      rows[y] = raw.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!failure.empty())
    throw IoError("png import " + path.string() + ": " + failure);

  const std::size_t channels = h.color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  const std::size_t n = h.width * h.height * channels;
  std::vector<float> data(n);
  if (h.bit_depth == 8) {
    for (std::size_t i = 0; i < n; ++i)
      data[i] = static_cast<float>(raw[i] / 255.0);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned v = raw[2 * i] | (static_cast<unsigned>(raw[2 * i + 1]) << 8);
      data[i] = static_cast<float>(v / 65535.0);
    }
  }
  return Image(h.height, h.width, channels, std::move(data));
}

/// Writes an image as an 8- or 16-bit grayscale/RGB PNG, rounding to nearest code.
inline void export_image(const std::filesystem::path& path, const Image& img, int bit_depth = 8)
{
  if (bit_depth != 8 && bit_depth != 16)
    throw ArgumentError("png export: bit depth must be 8 or 16");

  const double scale = bit_depth == 8 ? 255.0 : 65535.0;
  const std::size_t bytes_per_sample = bit_depth / 8;
  const std::size_t rowbytes = img.width() * img.channels() * bytes_per_sample;
  std::vector<std::uint8_t> raw(rowbytes * img.height());
  const auto d = img.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto code = static_cast<unsigned>(std::lround(d[i] * scale));
    if (bit_depth == 8) {
      raw[i] = static_cast<std::uint8_t>(code);
    } else {
      raw[2 * i] = static_cast<std::uint8_t>(code >> 8);  // PNG is big-endian
      raw[2 * i + 1] = static_cast<std::uint8_t>(code & 0xff);
    }
  }

  detail::FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file)
    throw IoError("cannot open " + path.string() + " for writing");

  std::vector<png_bytep> rows(img.height());
  for (std::size_t y = 0; y < img.height(); ++y)
    rows[y] = raw.data() + y * rowbytes;

  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, detail::on_error,
                                            detail::on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png export " + path.string() + ": " + message);
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
               static_cast<png_uint_32>(img.height()), bit_depth,
               img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

/// Reads width, height and channel count from the PNG header only.
inline Shape probe(const std::filesystem::path& path)
{
  detail::FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file)
    throw IoError("cannot open " + path.string() + " for reading");
  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, detail::on_error,
                                           detail::on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png probe " + path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  Shape s{png_get_image_height(png, info), png_get_image_width(png, info),
          color == PNG_COLOR_TYPE_RGB ? 3u : color == PNG_COLOR_TYPE_GRAY ? 1u : 0u};
  png_destroy_read_struct(&png, &info, nullptr);
  if (s.channels == 0)
    throw IoError("png probe " + path.string() + ": unsupported color type " +
                  std::to_string(color));
  return s;
}

}  // namespace shutterforge::png

#endif  // SHUTTERFORGE_PNG_IO_HPP
