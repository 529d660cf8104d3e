#include "sdc/resample/warp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdc/core/parallel.hpp"

namespace sdc {
namespace {

void require_field_shape(const Frame& frame, int height, int width, const char* what) {
  if (frame.height() != height || frame.width() != width) {
    throw std::invalid_argument(std::string(what) +
                                ": field dimensions do not match the frame");
  }
}

// Integer footprint of an N x N displaced patch. All taps share one
// fractional offset, so the patch is a bilinear blend of the (N+1) x (N+1)
// grid of clamped pixels starting at (x0 - r, y0 - r).
struct Footprint {
  double fx;
  double fy;
  std::vector<int> cols;  // N + 1 clamped column indices
  std::vector<int> rows;  // N + 1 clamped row indices

  explicit Footprint(int n) : fx(0), fy(0), cols(n + 1), rows(n + 1) {}

  void locate(double sx, double sy, int r, int width, int height) {
    // Beyond these bounds every tap clamps to the same border pixel, so
    // limiting the coordinate changes nothing but keeps floor() in range.
    sx = std::clamp(sx, -(r + 2.0), width + r + 1.0);
    sy = std::clamp(sy, -(r + 2.0), height + r + 1.0);
    const double fl_x = std::floor(sx);
    const double fl_y = std::floor(sy);
    fx = sx - fl_x;
    fy = sy - fl_y;
    const int x0 = static_cast<int>(fl_x) - r;
    const int y0 = static_cast<int>(fl_y) - r;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      cols[k] = std::clamp(x0 + static_cast<int>(k), 0, width - 1);
      rows[k] = std::clamp(y0 + static_cast<int>(k), 0, height - 1);
    }
  }
};

}  // namespace

double bilinear_sample(const Frame& frame, double x, double y, int c) {
  const int w = frame.width();
  const int h = frame.height();
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const double fl_x = std::floor(x);
  const double fl_y = std::floor(y);
  const int x0 = static_cast<int>(fl_x);
  const int y0 = static_cast<int>(fl_y);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - fl_x;
  const double fy = y - fl_y;
  const double top = (1.0 - fx) * frame.at(y0, x0, c) + fx * frame.at(y0, x1, c);
  const double bottom = (1.0 - fx) * frame.at(y1, x0, c) + fx * frame.at(y1, x1, c);
  return (1.0 - fy) * top + fy * bottom;
}

Frame warp_vector(const Frame& frame, const MotionField& motion) {
  require_field_shape(frame, motion.height(), motion.width(), "warp_vector");
  Frame out(frame.height(), frame.width(), frame.channels());
  parallel_for(0, frame.height(), [&](int y) {
    for (int x = 0; x < frame.width(); ++x) {
      const double sx = x + motion.u(y, x);
      const double sy = y + motion.v(y, x);
      for (int c = 0; c < frame.channels(); ++c) {
        out.at(y, x, c) = bilinear_sample(frame, sx, sy, c);
      }
    }
  });
  return out;
}

KernelField2D expand_separable(const SeparableKernelField& kernels) {
  const int n = kernels.n();
  KernelField2D out(kernels.height(), kernels.width(), n);
  for (int y = 0; y < kernels.height(); ++y) {
    for (int x = 0; x < kernels.width(); ++x) {
      const double* ku = kernels.ku(y, x);
      const double* kv = kernels.kv(y, x);
      double* w = out.weights(y, x);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i * n + j] = kv[i] * ku[j];
      }
    }
  }
  return out;
}

Frame warp_kernel(const Frame& frame, const KernelField2D& kernels) {
  require_field_shape(frame, kernels.height(), kernels.width(), "warp_kernel");
  const int n = kernels.n();
  if (n % 2 == 0) throw std::invalid_argument("warp_kernel: kernel size must be odd");
  const int r = n / 2;
  const int w = frame.width();
  const int h = frame.height();
  Frame out(h, w, frame.channels());
  parallel_for(0, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const double* weights = kernels.weights(y, x);
      for (int c = 0; c < frame.channels(); ++c) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
          const int ty = std::clamp(y - r + i, 0, h - 1);
          for (int j = 0; j < n; ++j) {
            const int tx = std::clamp(x - r + j, 0, w - 1);
            acc += weights[i * n + j] * frame.at(ty, tx, c);
          }
        }
        out.at(y, x, c) = acc;
      }
    }
  });
  return out;
}

Frame warp_sdc(const Frame& frame, const TransformParams& params) {
  require_field_shape(frame, params.height(), params.width(), "warp_sdc");
  validate(params);
  const int n = params.n();
  const int r = n / 2;
  const int w = frame.width();
  const int h = frame.height();
  const int channels = frame.channels();
  Frame out(h, w, channels);

  parallel_for(0, h, [&](int y) {
    Footprint fp(n);
    std::vector<double> row_sum(n + 1);
    for (int x = 0; x < w; ++x) {
      fp.locate(x + params.motion.u(y, x), y + params.motion.v(y, x), r, w, h);
      const double* ku = params.kernels.ku(y, x);
      const double* kv = params.kernels.kv(y, x);
      for (int c = 0; c < channels; ++c) {
        // Horizontal pass over N + 1 rows, then the vertical blend.
        for (int i = 0; i <= n; ++i) {
          const int ty = fp.rows[i];
          double left = frame.at(ty, fp.cols[0], c);
          double acc = 0.0;
          for (int j = 0; j < n; ++j) {
            const double right = frame.at(ty, fp.cols[j + 1], c);
            acc += ku[j] * ((1.0 - fp.fx) * left + fp.fx * right);
            left = right;
          }
          row_sum[i] = acc;
        }
        double value = 0.0;
        for (int i = 0; i < n; ++i) {
          value += kv[i] * ((1.0 - fp.fy) * row_sum[i] + fp.fy * row_sum[i + 1]);
        }
        out.at(y, x, c) = value;
      }
    }
  });
  return out;
}

TransformGradients sdc_backward(const Frame& frame, const TransformParams& params,
                                const Frame& output_grad) {
  require_same_shape(frame, output_grad, "sdc_backward");
  require_field_shape(frame, params.height(), params.width(), "sdc_backward");
  validate(params);
  const int n = params.n();
  const int r = n / 2;
  const int w = frame.width();
  const int h = frame.height();
  const int channels = frame.channels();
  TransformGradients grads(h, w, n);

  parallel_for(0, h, [&](int y) {
    Footprint fp(n);
    std::vector<double> row_sum(n + 1);    // sum_j ku_j * A_ij
    std::vector<double> row_slope(n + 1);  // sum_j ku_j * dA_ij/dfx
    std::vector<double> row_weight(n + 1); // vertical weight of patch row i
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      fp.locate(x + params.motion.u(y, x), y + params.motion.v(y, x), r, w, h);
      const double* ku = params.kernels.ku(y, x);
      const double* kv = params.kernels.kv(y, x);
      double* d_ku = grads.d_ku.data() + p * n;
      double* d_kv = grads.d_kv.data() + p * n;

      for (int i = 0; i <= n; ++i) {
        row_weight[i] = (i < n ? kv[i] * (1.0 - fp.fy) : 0.0) +
                        (i > 0 ? kv[i - 1] * fp.fy : 0.0);
      }

      double d_u = 0.0;
      double d_v = 0.0;
      for (int c = 0; c < channels; ++c) {
        const double g = output_grad.at(y, x, c);
        if (g == 0.0) continue;
        for (int i = 0; i <= n; ++i) {
          const int ty = fp.rows[i];
          const double gw = g * row_weight[i];
          double left = frame.at(ty, fp.cols[0], c);
          double acc = 0.0;
          double slope = 0.0;
          for (int j = 0; j < n; ++j) {
            const double right = frame.at(ty, fp.cols[j + 1], c);
            const double blended = (1.0 - fp.fx) * left + fp.fx * right;
            acc += ku[j] * blended;
            slope += ku[j] * (right - left);
            d_ku[j] += gw * blended;
            left = right;
          }
          row_sum[i] = acc;
          row_slope[i] = slope;
        }
        double du = 0.0;
        for (int i = 0; i <= n; ++i) du += row_weight[i] * row_slope[i];
        double dv = 0.0;
        for (int i = 0; i < n; ++i) {
          d_kv[i] += g * ((1.0 - fp.fy) * row_sum[i] + fp.fy * row_sum[i + 1]);
          dv += kv[i] * (row_sum[i + 1] - row_sum[i]);
        }
        d_u += g * du;
        d_v += g * dv;
      }
      grads.d_u[p] = d_u;
      grads.d_v[p] = d_v;
    }
  });
  return grads;
}

}  // namespace sdc
