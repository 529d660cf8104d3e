#include "sdc/core/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "sdc/core/binary_io.hpp"

namespace sdc {
namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

Frame from_bytes(int height, int width, int channels,
                 const std::vector<unsigned char>& bytes) {
  std::vector<double> data(bytes.size());
  std::transform(bytes.begin(), bytes.end(), data.begin(),
                 [](unsigned char b) { return b / 255.0; });
  return Frame(height, width, channels, std::move(data));
}

Frame load_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("cannot read PNG " + path.string() + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw IoError("unsupported bit depth (16-bit PNG): " + path.string());
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw IoError("PNG has a zero dimension: " + path.string());
  }
  const bool color = image.format & PNG_FORMAT_FLAG_COLOR;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  std::vector<unsigned char> bytes(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, bytes.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG " + path.string() + ": " + message);
  }
  return from_bytes(static_cast<int>(image.height), static_cast<int>(image.width),
                    channels, bytes);
}

void save_png(const Frame& frame, const std::vector<unsigned char>& bytes,
              const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width());
  image.height = static_cast<png_uint_32>(frame.height());
  image.format = frame.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    throw IoError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

// Netpbm header token, skipping whitespace and '#' comments.
int read_pnm_int(std::istream& in, const fs::path& path) {
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (!std::isspace(ch)) {
      break;
    }
    ch = in.get();
  }
  if (ch == EOF || !std::isdigit(ch)) {
    throw IoError("malformed PNM header: " + path.string());
  }
  long value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    if (value > (1 << 24)) throw IoError("PNM dimension too large: " + path.string());
    ch = in.get();
  }
  // exactly one whitespace byte separates the header from the raster
  return static_cast<int>(value);
}

Frame load_pnm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[2];
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '6' && magic[1] != '5')) {
    throw IoError("not a binary PPM/PGM file: " + path.string());
  }
  const int channels = magic[1] == '6' ? 3 : 1;
  const int width = read_pnm_int(in, path);
  const int height = read_pnm_int(in, path);
  const int maxval = read_pnm_int(in, path);
  if (width == 0 || height == 0) throw IoError("PNM has a zero dimension: " + path.string());
  if (maxval != 255) {
    throw IoError("unsupported bit depth (maxval " + std::to_string(maxval) +
                  "): " + path.string());
  }
  std::vector<unsigned char> bytes(static_cast<std::size_t>(width) * height * channels);
  if (!in.read(reinterpret_cast<char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()))) {
    throw IoError("truncated PNM raster: " + path.string());
  }
  return from_bytes(height, width, channels, bytes);
}

void save_pnm(const Frame& frame, std::vector<unsigned char> bytes, bool color,
              const fs::path& path) {
  if (color && frame.channels() == 1) {
    std::vector<unsigned char> rgb(bytes.size() * 3);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = bytes[i];
    }
    bytes = std::move(rgb);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << (color ? "P6\n" : "P5\n") << frame.width() << ' ' << frame.height()
      << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

unsigned char quantize_8bit(double value) {
  const double clamped = std::clamp(value, 0.0, 1.0);
  return static_cast<unsigned char>(std::floor(clamped * 255.0 + 0.5));
}

Frame load_frame(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("no such file: " + path.string());
  const std::string ext = lower_extension(path);
  if (ext == ".png") return load_png(path);
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return load_pnm(path);
  throw IoError("unsupported image format: " + path.string());
}

void save_frame(const Frame& frame, const fs::path& path) {
  if (frame.empty()) throw std::invalid_argument("cannot save an empty frame");
  std::vector<unsigned char> bytes(frame.size());
  std::transform(frame.data().begin(), frame.data().end(), bytes.begin(), quantize_8bit);
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    if (frame.channels() != 1 && frame.channels() != 3) {
      throw std::invalid_argument("PNG output needs 1 or 3 channels");
    }
    save_png(frame, bytes, path);
  } else if (ext == ".ppm" || ext == ".pgm") {
    const bool color = ext == ".ppm";
    if (frame.channels() != (color ? 3 : 1) && !(color && frame.channels() == 1)) {
      throw std::invalid_argument("channel count does not fit " + ext);
    }
    save_pnm(frame, std::move(bytes), color, path);
  } else {
    throw IoError("unsupported image format: " + path.string());
  }
}

FlowField read_flo(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const float magic = binary::read_le<float>(in, "flo header");
  if (magic != kFloMagic) throw IoError("bad magic in " + path.string());
  const auto width = binary::read_le<std::int32_t>(in, "flo header");
  const auto height = binary::read_le<std::int32_t>(in, "flo header");
  if (width < 1 || height < 1) {
    throw IoError("flo has invalid dimensions: " + path.string());
  }
  const auto n = static_cast<std::size_t>(width) * height;
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = binary::read_le<float>(in, "flo payload");
    v[i] = binary::read_le<float>(in, "flo payload");
    if (!std::isfinite(u[i]) || !std::isfinite(v[i])) {
      throw IoError("non-finite flow value at pixel " + std::to_string(i) +
                    " in " + path.string());
    }
  }
  return FlowField(height, width, std::move(u), std::move(v));
}

void write_flo(const FlowField& field, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  binary::write_le(out, kFloMagic);
  binary::write_le(out, static_cast<std::int32_t>(field.width()));
  binary::write_le(out, static_cast<std::int32_t>(field.height()));
  for (std::size_t i = 0; i < field.pixel_count(); ++i) {
    binary::write_le(out, static_cast<float>(field.u_data()[i]));
    binary::write_le(out, static_cast<float>(field.v_data()[i]));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sdc
