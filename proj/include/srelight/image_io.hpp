#pragma once

#include <cstdint>
#include <filesystem>

#include "srelight/image.hpp"

namespace srelight {

/// 8-bit PNG of any layout, expanded to RGB with samples in [0,1]. Gray
/// PNGs are replicated across channels; alpha is dropped.
ColorImaged read_png(const std::filesystem::path& path);

/// Writes an RGB image as 8-bit RGB PNG. Samples are clamped to [0,1] and
/// rounded to the nearest code value.
void write_png(const std::filesystem::path& path, const ColorImaged& img);

/// Writes a single plane as 8-bit grayscale PNG after multiplying by `scale`.
void write_png_gray(const std::filesystem::path& path, const ImagePlane& plane, double scale = 1.0);

/// Nearest 8-bit code for a sample, after clamping to [0,1].
std::uint8_t quantize8(double v);

/// Portable FloatMap, single channel ("Pf"). Writes little-endian with scale
/// -1.0 and rows stored bottom-to-top as the format requires. Reading also
/// accepts big-endian files; 3-channel "PF" files are rejected.
ImagePlane read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const ImagePlane& plane);

}  // namespace srelight
