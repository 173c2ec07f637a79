#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hcbreak/bytes.hpp"
#include "hcbreak/chaos.hpp"

namespace hcbreak::imageio {

/// 8-bit grayscale image, pixels in raster order.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  ByteSeq pixels;

  bool operator==(const GrayImage&) const = default;
};

/// Binary PGM ("P5", maxval 255). Whitespace and '#' comments between header
/// fields are accepted. FormatError on anything else, including color PPM.
GrayImage read_pgm(std::string_view bytes);

/// Canonical "P5\n<w> <h>\n255\n" header followed by the pixels.
std::string write_pgm(const GrayImage& img);

/// Headerless byte file. When a length is declared the data must match it.
ByteSeq read_raw(std::string_view bytes, std::optional<std::size_t> declared = std::nullopt);
std::string write_raw(ByteView data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

/// Single-line "x0 y0 z0 w0 n0 c0" key file.
chaos::SecretKey load_key(const std::filesystem::path& path);
void save_key(const std::filesystem::path& path, const chaos::SecretKey& key);

/// Nearest-neighbour resampling to width x height.
GrayImage downsample_nearest(const GrayImage& img, std::size_t width, std::size_t height);

}  // namespace hcbreak::imageio
