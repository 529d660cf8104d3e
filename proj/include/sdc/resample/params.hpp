#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "sdc/core/fields.hpp"

namespace sdc {

inline constexpr int kDefaultSdcKernelSize = 11;
inline constexpr int kDefaultKernelMethodSize = 51;

// Per-pixel pair of 1D kernels. ku is applied along x, kv along y; both are
// stored H x W x N with the tap index innermost. Weights are unconstrained.
class SeparableKernelField {
 public:
  SeparableKernelField() = default;
  SeparableKernelField(int height, int width, int n);  // all zeros

  // Every kernel is the middle-one-hot vector (pass-through).
  static SeparableKernelField middle_one_hot(int height, int width, int n);

  int height() const { return height_; }
  int width() const { return width_; }
  int n() const { return n_; }
  int radius() const { return n_ / 2; }

  double* ku(int y, int x) { return ku_.data() + offset(y, x); }
  double* kv(int y, int x) { return kv_.data() + offset(y, x); }
  const double* ku(int y, int x) const { return ku_.data() + offset(y, x); }
  const double* kv(int y, int x) const { return kv_.data() + offset(y, x); }

  std::vector<double>& ku_data() { return ku_; }
  std::vector<double>& kv_data() { return kv_; }
  const std::vector<double>& ku_data() const { return ku_; }
  const std::vector<double>& kv_data() const { return kv_; }

  bool operator==(const SeparableKernelField&) const = default;

 private:
  std::size_t offset(int y, int x) const {
    return (static_cast<std::size_t>(y) * width_ + x) * n_;
  }

  int height_ = 0;
  int width_ = 0;
  int n_ = 0;
  std::vector<double> ku_;
  std::vector<double> kv_;
};

// Dense per-pixel N x N kernels, H x W x N x N; weights(y,x)[i*N + j]
// multiplies the tap at row offset i and column offset j.
class KernelField2D {
 public:
  KernelField2D() = default;
  KernelField2D(int height, int width, int n);

  int height() const { return height_; }
  int width() const { return width_; }
  int n() const { return n_; }

  double* weights(int y, int x) { return data_.data() + offset(y, x); }
  const double* weights(int y, int x) const { return data_.data() + offset(y, x); }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t offset(int y, int x) const {
    return (static_cast<std::size_t>(y) * width_ + x) * n_ * n_;
  }

  int height_ = 0;
  int width_ = 0;
  int n_ = 0;
  std::vector<double> data_;
};

// Everything the displaced convolution consumes: 2N + 2 scalars per pixel.
struct TransformParams {
  MotionField motion;
  SeparableKernelField kernels;

  // Zero motion with middle-one-hot kernels: the identity transform.
  static TransformParams identity(int height, int width, int n);

  int height() const { return motion.height(); }
  int width() const { return motion.width(); }
  int n() const { return kernels.n(); }
  std::size_t scalar_count() const;

  bool operator==(const TransformParams&) const = default;
};

// Throws std::invalid_argument unless motion and kernels agree in size,
// N is odd and positive, and every value is finite.
void validate(const TransformParams& params);

// Partial derivatives of a scalar loss, laid out like TransformParams.
struct TransformGradients {
  int height = 0;
  int width = 0;
  int n = 0;
  std::vector<double> d_u;
  std::vector<double> d_v;
  std::vector<double> d_ku;
  std::vector<double> d_kv;

  TransformGradients() = default;
  TransformGradients(int height, int width, int n);
};

// Binary container: "SDCP", int32 H, int32 W, int32 N, int32 version, then
// u, v (H*W each) and ku, kv (H*W*N each) as little-endian float32.
inline constexpr std::uint32_t kParamsVersion = 1;

void write_params(const TransformParams& params, const std::filesystem::path& path);
TransformParams read_params(const std::filesystem::path& path);

}  // namespace sdc
