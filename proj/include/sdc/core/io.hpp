#pragma once

#include <filesystem>
#include <stdexcept>

#include "sdc/core/fields.hpp"
#include "sdc/core/frame.hpp"

namespace sdc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// PNG (8-bit gray or color; alpha is dropped), binary PPM (P6) and PGM (P5)
// with maxval 255. Values are scaled to [0,1].
Frame load_frame(const std::filesystem::path& path);

// Clamps to [0,1] and quantizes with round(v * 255), halves rounding up.
// The format follows the extension: .png, .ppm (C=3) or .pgm (C=1).
// A single-channel frame written to .ppm is replicated to three channels.
void save_frame(const Frame& frame, const std::filesystem::path& path);

// 8-bit code for a value: clamp then round half up.
unsigned char quantize_8bit(double value);

// Middlebury .flo: float magic 202021.25, int32 width, int32 height, then
// interleaved (u, v) float32, all little-endian.
inline constexpr float kFloMagic = 202021.25f;

FlowField read_flo(const std::filesystem::path& path);
void write_flo(const FlowField& field, const std::filesystem::path& path);

}  // namespace sdc
