#include "sdc/resample/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "sdc/core/binary_io.hpp"
#include "sdc/core/io.hpp"

namespace sdc {
namespace {

constexpr char kParamsMagic[4] = {'S', 'D', 'C', 'P'};

void check_kernel_dims(int height, int width, int n) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("kernel field dimensions must be at least 1x1");
  }
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("kernel size must be odd and positive, got " +
                                std::to_string(n));
  }
}

bool all_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

SeparableKernelField::SeparableKernelField(int height, int width, int n)
    : height_(height), width_(width), n_(n) {
  check_kernel_dims(height, width, n);
  const auto size = static_cast<std::size_t>(height) * width * n;
  ku_.assign(size, 0.0);
  kv_.assign(size, 0.0);
}

SeparableKernelField SeparableKernelField::middle_one_hot(int height, int width, int n) {
  SeparableKernelField field(height, width, n);
  const int mid = n / 2;
  for (std::size_t p = 0; p < static_cast<std::size_t>(height) * width; ++p) {
    field.ku_[p * n + mid] = 1.0;
    field.kv_[p * n + mid] = 1.0;
  }
  return field;
}

KernelField2D::KernelField2D(int height, int width, int n)
    : height_(height), width_(width), n_(n) {
  check_kernel_dims(height, width, n);
  data_.assign(static_cast<std::size_t>(height) * width * n * n, 0.0);
}

TransformParams TransformParams::identity(int height, int width, int n) {
  return {MotionField(height, width),
          SeparableKernelField::middle_one_hot(height, width, n)};
}

std::size_t TransformParams::scalar_count() const {
  return motion.u_data().size() + motion.v_data().size() +
         kernels.ku_data().size() + kernels.kv_data().size();
}

void validate(const TransformParams& params) {
  const auto& k = params.kernels;
  if (k.n() < 1 || k.n() % 2 == 0) {
    throw std::invalid_argument("kernel size must be odd and positive");
  }
  if (params.motion.height() != k.height() || params.motion.width() != k.width()) {
    throw std::invalid_argument("motion and kernel fields differ in size");
  }
  if (!all_finite(params.motion.u_data()) || !all_finite(params.motion.v_data()) ||
      !all_finite(k.ku_data()) || !all_finite(k.kv_data())) {
    throw std::invalid_argument("transform parameters contain non-finite values");
  }
}

TransformGradients::TransformGradients(int h, int w, int kernel_size)
    : height(h), width(w), n(kernel_size) {
  const auto pixels = static_cast<std::size_t>(h) * w;
  d_u.assign(pixels, 0.0);
  d_v.assign(pixels, 0.0);
  d_ku.assign(pixels * kernel_size, 0.0);
  d_kv.assign(pixels * kernel_size, 0.0);
}

void write_params(const TransformParams& params, const std::filesystem::path& path) {
  validate(params);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kParamsMagic, 4);
  binary::write_le(out, static_cast<std::int32_t>(params.height()));
  binary::write_le(out, static_cast<std::int32_t>(params.width()));
  binary::write_le(out, static_cast<std::int32_t>(params.n()));
  binary::write_le(out, static_cast<std::int32_t>(kParamsVersion));
  for (const auto* array : {&params.motion.u_data(), &params.motion.v_data(),
                            &params.kernels.ku_data(), &params.kernels.kv_data()}) {
    for (double value : *array) binary::write_le(out, static_cast<float>(value));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

TransformParams read_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kParamsMagic)) {
    throw IoError("bad magic in " + path.string());
  }
  const auto height = binary::read_le<std::int32_t>(in, "params header");
  const auto width = binary::read_le<std::int32_t>(in, "params header");
  const auto n = binary::read_le<std::int32_t>(in, "params header");
  const auto version = binary::read_le<std::int32_t>(in, "params header");
  if (version != static_cast<std::int32_t>(kParamsVersion)) {
    throw IoError("unsupported params version " + std::to_string(version));
  }
  if (height < 1 || width < 1 || n < 1 || n % 2 == 0 || height > (1 << 16) ||
      width > (1 << 16) || n > 1023) {
    throw IoError("invalid params header in " + path.string());
  }
  TransformParams params{MotionField(height, width), SeparableKernelField(height, width, n)};
  for (auto* array : {&params.motion.u_data(), &params.motion.v_data(),
                      &params.kernels.ku_data(), &params.kernels.kv_data()}) {
    for (double& value : *array) {
      value = binary::read_le<float>(in, "params payload");
      if (!std::isfinite(value)) throw IoError("non-finite parameter in " + path.string());
    }
  }
  return params;
}

}  // namespace sdc
