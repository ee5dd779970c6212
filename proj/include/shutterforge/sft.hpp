#ifndef SHUTTERFORGE_SFT_HPP
#define SHUTTERFORGE_SFT_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shutterforge/error.hpp"
#include "shutterforge/tensor.hpp"

// SFT container layout (all integers little-endian):
//   0..3   magic "SFT1"
//   4      kind (TensorKind)
//   5      dtype, 0 = f32
//   6..7   reserved, zero
//   8..11  u32 height
//   12..15 u32 width
//   16..19 u32 channels
//   20..27 reserved, zero
//   28..   row-major f32 payload

namespace shutterforge::sft {

inline constexpr std::size_t header_size = 28;
inline constexpr std::array<std::uint8_t, 4> magic = {'S', 'F', 'T', '1'};

using AnyTensor = std::variant<Image, FlowField, MaskMap, EncodingMap>;

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::size_t at, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i)
    out[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

inline std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at)
{
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

template <class T>
T build(const Shape& shape, std::vector<float> payload)
{
  if (!T::traits_type::channels_ok(shape.channels))
    throw FormatError(std::string("invalid channel count for ") + T::traits_type::name, 16);
  for (std::size_t i = 0; i < payload.size(); ++i)
    if (!T::traits_type::admissible(payload[i], shape.height))
      throw FormatError(std::string("invalid ") + T::traits_type::name + " element value " +
                          std::to_string(payload[i]),
                        header_size + 4 * i);
  return T(shape.height, shape.width, shape.channels, std::move(payload));
}

}  // namespace detail

/// Serializes a tensor into its SFT byte image. Identical tensors give identical bytes.
template <class Traits>
  requires Traits::serializable
std::vector<std::uint8_t> encode(const Grid<Traits>& t)
{
  std::vector<std::uint8_t> out(header_size + 4 * t.size(), 0);
  std::copy(magic.begin(), magic.end(), out.begin());
  out[4] = static_cast<std::uint8_t>(Traits::kind);
  out[5] = 0;
  detail::put_u32(out, 8, static_cast<std::uint32_t>(t.height()));
  detail::put_u32(out, 12, static_cast<std::uint32_t>(t.width()));
  detail::put_u32(out, 16, static_cast<std::uint32_t>(t.channels()));
  const auto data = t.data();
  for (std::size_t i = 0; i < data.size(); ++i)
    detail::put_u32(out, header_size + 4 * i, std::bit_cast<std::uint32_t>(data[i]));
  return out;
}

inline std::vector<std::uint8_t> encode(const AnyTensor& t)
{
  return std::visit([](const auto& g) { return encode(g); }, t);
}

/// Parses an SFT byte image, validating header, payload length and element domain.
inline AnyTensor decode(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < header_size)
    throw FormatError("truncated header: " + std::to_string(bytes.size()) + " bytes",
                      bytes.size());
  for (std::size_t i = 0; i < magic.size(); ++i)
    if (bytes[i] != magic[i])
      throw FormatError("bad magic", i);
  if (bytes[4] > 3)
    throw FormatError("unknown tensor kind " + std::to_string(bytes[4]), 4);
  if (bytes[5] != 0)
    throw FormatError("unsupported dtype " + std::to_string(bytes[5]), 5);
  for (std::size_t i : {6u, 7u})
    if (bytes[i] != 0)
      throw FormatError("reserved byte not zero", i);
  for (std::size_t i = 20; i < header_size; ++i)
    if (bytes[i] != 0)
      throw FormatError("reserved byte not zero", i);

  const Shape shape{detail::get_u32(bytes, 8), detail::get_u32(bytes, 12),
                    detail::get_u32(bytes, 16)};
  if (shape.height == 0 || shape.width == 0 || shape.channels == 0)
    throw FormatError("zero dimension in shape " + to_string(shape), 8);
  const std::size_t n = shape.elements();
  const std::size_t expected = header_size + 4 * n;
  if (bytes.size() < expected)
    throw FormatError("truncated payload: expected " + std::to_string(expected) + " bytes, got " +
                        std::to_string(bytes.size()),
                      bytes.size());
  if (bytes.size() > expected)
    throw FormatError("trailing bytes after payload", expected);

  std::vector<float> payload(n);
  for (std::size_t i = 0; i < n; ++i)
    payload[i] = std::bit_cast<float>(detail::get_u32(bytes, header_size + 4 * i));

  switch (static_cast<TensorKind>(bytes[4])) {
    case TensorKind::image:
      return detail::build<Image>(shape, std::move(payload));
    case TensorKind::flow:
      return detail::build<FlowField>(shape, std::move(payload));
    case TensorKind::mask:
      return detail::build<MaskMap>(shape, std::move(payload));
    case TensorKind::encoding:
      return detail::build<EncodingMap>(shape, std::move(payload));
  }
  throw FormatError("unknown tensor kind", 4);
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string() + " for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad())
    throw IoError("read failure on " + path.string());
  return bytes;
}

inline void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw IoError("write failure on " + path.string());
}

template <class Traits>
  requires Traits::serializable
void write(const std::filesystem::path& path, const Grid<Traits>& t)
{
  write_bytes(path, encode(t));
}

inline void write(const std::filesystem::path& path, const AnyTensor& t)
{
  write_bytes(path, encode(t));
}

inline AnyTensor read(const std::filesystem::path& path)
{
  const auto bytes = read_bytes(path);
  try {
    return decode(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.message(), e.offset());
  }
}

/// Reads a tensor and requires it to be of kind T.
template <class T>
T read_as(const std::filesystem::path& path)
{
  auto any = read(path);
  if (auto* t = std::get_if<T>(&any))
    return std::move(*t);
  throw FormatError(path.string() + ": expected " + T::traits_type::name, 4);
}

/// Reads the shape and kind without loading the payload.
inline std::pair<TensorKind, Shape> probe(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string() + " for reading");
  std::array<std::uint8_t, header_size> header{};
  in.read(reinterpret_cast<char*>(header.data()), header_size);
  if (in.gcount() != static_cast<std::streamsize>(header_size))
    throw FormatError(path.string() + ": truncated header", static_cast<std::size_t>(in.gcount()));
  for (std::size_t i = 0; i < magic.size(); ++i)
    if (header[i] != magic[i])
      throw FormatError(path.string() + ": bad magic", i);
  if (header[4] > 3)
    throw FormatError(path.string() + ": unknown tensor kind", 4);
  return {static_cast<TensorKind>(header[4]),
          Shape{detail::get_u32(header, 8), detail::get_u32(header, 12),
                detail::get_u32(header, 16)}};
}

}  // namespace shutterforge::sft

#endif  // SHUTTERFORGE_SFT_HPP
