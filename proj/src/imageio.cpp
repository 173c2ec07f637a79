#include "hcbreak/imageio.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "hcbreak/errors.hpp"

namespace hcbreak::imageio {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (++digits > 9) throw FormatError(std::string("pgm: ") + what + " is too large");
      ++pos_;
    }
    if (digits == 0) throw FormatError(std::string("pgm: missing ") + what);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw FormatError("pgm: expected whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

GrayImage read_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw FormatError("pgm: bad magic number");
  switch (bytes[1]) {
    case '5':
      break;
    case '3':
    case '6':
      throw FormatError("pgm: color images are not supported, convert to 8-bit grayscale");
    case '2':
      throw FormatError("pgm: ASCII (P2) files are not supported, expected binary P5");
    default:
      throw FormatError("pgm: bad magic number");
  }
  HeaderReader header(bytes);
  GrayImage img;
  img.width = header.number("width");
  img.height = header.number("height");
  const std::size_t maxval = header.number("maxval");
  if (img.width == 0 || img.height == 0) throw FormatError("pgm: empty image");
  if (maxval != 255) throw FormatError("pgm: only maxval 255 is supported, got " + std::to_string(maxval));
  header.single_space();
  const std::size_t expected = img.width * img.height;
  const std::size_t available = bytes.size() - header.position();
  if (available < expected) {
    throw FormatError("pgm: truncated payload, expected " + std::to_string(expected) + " bytes, got " +
                      std::to_string(available));
  }
  const auto* first = reinterpret_cast<const Byte*>(bytes.data() + header.position());
  img.pixels.assign(first, first + expected);
  return img;
}

std::string write_pgm(const GrayImage& img) {
  if (img.pixels.size() != img.width * img.height) {
    throw LengthMismatch(img.width * img.height, img.pixels.size());
  }
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

ByteSeq read_raw(std::string_view bytes, std::optional<std::size_t> declared) {
  if (declared && *declared != bytes.size()) {
    throw FormatError("raw: declared length " + std::to_string(*declared) + ", file holds " +
                      std::to_string(bytes.size()) + " bytes");
  }
  const auto* first = reinterpret_cast<const Byte*>(bytes.data());
  return ByteSeq(first, first + bytes.size());
}

std::string write_raw(ByteView data) {
  return std::string(reinterpret_cast<const char*>(data.data()), data.size());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot create " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + path.string());
}

GrayImage load_pgm(const std::filesystem::path& path) { return read_pgm(read_file(path)); }

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, write_pgm(img));
}

chaos::SecretKey load_key(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto eol = text.find('\n');
  if (eol != std::string::npos && text.find_first_not_of(" \t\r\n", eol) != std::string::npos) {
    throw FormatError("key file must hold a single line");
  }
  return chaos::parse_key(text);
}

void save_key(const std::filesystem::path& path, const chaos::SecretKey& key) {
  write_file(path, chaos::format_key(key) + "\n");
}

GrayImage downsample_nearest(const GrayImage& img, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw PreconditionError("downsample: target size must be positive");
  GrayImage out{width, height, ByteSeq(width * height)};
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t sy = y * img.height / height;
    for (std::size_t x = 0; x < width; ++x) {
      out.pixels[y * width + x] = img.pixels[sy * img.width + x * img.width / width];
    }
  }
  return out;
}

}  // namespace hcbreak::imageio
