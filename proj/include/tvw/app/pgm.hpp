#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvw::app {

/// Grayscale raster, row-major from the top-left pixel.
struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

class PgmError : public std::runtime_error {
 public:
  PgmError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
        reason_(what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
  std::size_t offset_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses P2 (plain) or P5 (binary) PGM; 16-bit P5 samples are big-endian.
GrayImage parse_pgm(std::string_view bytes);
std::string encode_pgm(const GrayImage& image, bool binary = true);

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image, bool binary = true);

}  // namespace tvw::app
