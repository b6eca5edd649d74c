#include "tvw/app/pgm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace tvw::app {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view bytes) : bytes_(bytes) {}

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000) throw PgmError(std::string("number too large for ") + what, start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size()) throw PgmError(std::string("unexpected end of file reading ") + what, pos_);
      throw PgmError(std::string("expected unsigned integer for ") + what, pos_);
    }
    return v;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw PgmError("not a P2/P5 PGM file", 0);
  }
  const bool binary = bytes[1] == '5';
  Scanner sc(bytes);
  sc.advance(2);
  GrayImage img;
  const std::size_t header_pos = sc.pos();
  const long w = sc.read_uint("width");
  const long h = sc.read_uint("height");
  const std::size_t maxval_pos = sc.pos();
  const long maxval = sc.read_uint("maxval");
  if (w <= 0 || h <= 0) throw PgmError("image dimensions must be positive", header_pos);
  if (w * h > 1L << 28) throw PgmError("image too large", header_pos);
  if (maxval <= 0 || maxval > 65535) throw PgmError("maxval must lie in [1, 65535]", maxval_pos);
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.maxval = static_cast<int>(maxval);
  const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  img.pixels.resize(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (sc.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[sc.pos()]))) {
      throw PgmError("missing whitespace after maxval", sc.pos());
    }
    sc.advance(1);
    const std::size_t bps = maxval < 256 ? 1 : 2;
    const std::size_t start = sc.pos();
    const std::size_t need = count * bps;
    if (bytes.size() - start < need) {
      throw PgmError("truncated raster: expected " + std::to_string(need) + " bytes, found " +
                         std::to_string(bytes.size() - start),
                     bytes.size());
    }
    for (std::size_t k = 0; k < count; ++k) {
      const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + start + k * bps);
      const unsigned v = bps == 1 ? p[0] : (static_cast<unsigned>(p[0]) << 8) | p[1];
      if (v > static_cast<unsigned>(maxval)) throw PgmError("sample exceeds maxval", start + k * bps);
      img.pixels[k] = static_cast<std::uint16_t>(v);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t at = sc.pos();
      const long v = sc.read_uint("sample");
      if (v > maxval) throw PgmError("sample exceeds maxval", at);
      img.pixels[k] = static_cast<std::uint16_t>(v);
    }
  }
  return img;
}

std::string encode_pgm(const GrayImage& image, bool binary) {
  if (image.width <= 0 || image.height <= 0 || image.maxval <= 0 || image.maxval > 65535 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw std::invalid_argument("encode_pgm: inconsistent image");
  }
  std::ostringstream out;
  out << (binary ? "P5" : "P2") << '\n' << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
  if (binary) {
    const bool wide = image.maxval >= 256;
    for (std::uint16_t v : image.pixels) {
      if (wide) out.put(static_cast<char>(v >> 8));
      out.put(static_cast<char>(v & 0xff));
    }
  } else {
    for (int j = 0; j < image.height; ++j) {
      for (int i = 0; i < image.width; ++i) {
        out << image.pixels[static_cast<std::size_t>(j) * image.width + i] << (i + 1 < image.width ? ' ' : '\n');
      }
    }
  }
  return out.str();
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_pgm(ss.str());
  } catch (const PgmError& e) {
    throw PgmError(path.string() + ": " + e.reason(), e.offset());
  }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image, bool binary) {
  const std::string bytes = encode_pgm(image, binary);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace tvw::app
