#include "srelight/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace srelight {
namespace {

void write_png_bytes(const std::filesystem::path& path, int width, int height, png_uint_32 format,
                     const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot write " + path.string() + ": " + msg);
  }
}

}  // namespace

std::uint8_t quantize8(double v) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

ColorImaged read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot read " + path.string() + ": " + msg);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> bytes(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, bytes.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode " + path.string() + ": " + msg);
  }
  const auto width = static_cast<Eigen::Index>(image.width);
  const auto height = static_cast<Eigen::Index>(image.height);
  ImagePlane ch[3] = {ImagePlane(height, width), ImagePlane(height, width), ImagePlane(height, width)};
  for (Eigen::Index r = 0; r < height; ++r) {
    for (Eigen::Index c = 0; c < width; ++c) {
      for (int k = 0; k < 3; ++k) ch[k](r, c) = bytes[static_cast<std::size_t>((r * width + c) * 3 + k)] / 255.0;
    }
  }
  return ColorImaged(ColorSpace::RGB, std::move(ch[0]), std::move(ch[1]), std::move(ch[2]));
}

void write_png(const std::filesystem::path& path, const ColorImaged& img) {
  if (img.space() != ColorSpace::RGB) throw StructuralError("write_png expects an RGB image");
  const auto w = img.width();
  const auto h = img.height();
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w * h * 3));
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      for (int k = 0; k < 3; ++k) bytes[static_cast<std::size_t>((r * w + c) * 3 + k)] = quantize8(img[k](r, c));
    }
  }
  write_png_bytes(path, static_cast<int>(w), static_cast<int>(h), PNG_FORMAT_RGB, bytes);
}

void write_png_gray(const std::filesystem::path& path, const ImagePlane& plane, double scale) {
  const auto w = plane.cols();
  const auto h = plane.rows();
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w * h));
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) bytes[static_cast<std::size_t>(r * w + c)] = quantize8(plane(r, c) * scale);
  }
  write_png_bytes(path, static_cast<int>(w), static_cast<int>(h), PNG_FORMAT_GRAY, bytes);
}

ImagePlane read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  long width = 0;
  long height = 0;
  double scale = 0;
  in >> magic >> width >> height >> scale;
  if (!in || (magic != "Pf" && magic != "PF")) throw ParseError(path.string() + ": not a PFM file");
  if (magic == "PF") throw ParseError(path.string() + ": 3-channel PFM where a single plane was expected");
  if (width < 1 || height < 1 || scale == 0) throw ParseError(path.string() + ": bad PFM header");
  in.get();  // single whitespace byte ends the header

  const bool little = scale < 0;
  const bool swap = little != (std::endian::native == std::endian::little);
  std::vector<std::uint32_t> raw(static_cast<std::size_t>(width * height));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
  if (in.gcount() != static_cast<std::streamsize>(raw.size() * 4)) throw ParseError(path.string() + ": truncated PFM");

  ImagePlane out(height, width);
  for (long r = 0; r < height; ++r) {
    const long src_row = height - 1 - r;
    for (long c = 0; c < width; ++c) {
      std::uint32_t bits = raw[static_cast<std::size_t>(src_row * width + c)];
      if (swap) bits = __builtin_bswap32(bits);
      out(r, c) = static_cast<double>(std::bit_cast<float>(bits));
    }
  }
  return out;
}

void write_pfm(const std::filesystem::path& path, const ImagePlane& plane) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "Pf\n" << plane.cols() << " " << plane.rows() << "\n-1.0\n";
  std::vector<std::uint32_t> raw(static_cast<std::size_t>(plane.size()));
  std::size_t k = 0;
  for (Eigen::Index r = plane.rows() - 1; r >= 0; --r) {
    for (Eigen::Index c = 0; c < plane.cols(); ++c) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(static_cast<float>(plane(r, c)));
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      raw[k++] = bits;
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace srelight
