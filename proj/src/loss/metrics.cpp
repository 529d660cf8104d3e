#include "sdc/loss/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sdc/loss/losses.hpp"

namespace sdc {
namespace {

std::vector<double> gaussian_taps(int size, double sigma) {
  std::vector<double> taps(size);
  const double center = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - center;
    taps[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Valid-region separable filtering of a single-channel plane.
std::vector<double> filter_valid(const std::vector<double>& plane, int height, int width,
                                 const std::vector<double>& taps) {
  const int k = static_cast<int>(taps.size());
  const int out_w = width - k + 1;
  const int out_h = height - k + 1;
  std::vector<double> horizontal(static_cast<std::size_t>(height) * out_w);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += taps[i] * plane[y * width + x + i];
      horizontal[y * out_w + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(out_h) * out_w);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += taps[i] * horizontal[(y + i) * out_w + x];
      out[y * out_w + x] = acc;
    }
  }
  return out;
}

}  // namespace

double psnr_from_mse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(mse);
}

double metric_psnr(const Frame& pred, const Frame& target) {
  return psnr_from_mse(loss_l2(pred, target));
}

double metric_ssim(const Frame& pred, const Frame& target, const SsimParams& params) {
  require_same_shape(pred, target, "metric_ssim");
  const int h = pred.height();
  const int w = pred.width();
  if (h < params.window || w < params.window) {
    throw std::invalid_argument("SSIM needs frames of at least " +
                                std::to_string(params.window) + "x" +
                                std::to_string(params.window));
  }
  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);
  const auto taps = gaussian_taps(params.window, params.sigma);
  const auto plane_size = static_cast<std::size_t>(h) * w;

  double total = 0.0;
  for (int c = 0; c < pred.channels(); ++c) {
    std::vector<double> a(plane_size), b(plane_size), aa(plane_size), bb(plane_size),
        ab(plane_size);
    for (std::size_t i = 0; i < plane_size; ++i) {
      a[i] = pred.data()[i * pred.channels() + c];
      b[i] = target.data()[i * pred.channels() + c];
      aa[i] = a[i] * a[i];
      bb[i] = b[i] * b[i];
      ab[i] = a[i] * b[i];
    }
    const auto mu_a = filter_valid(a, h, w, taps);
    const auto mu_b = filter_valid(b, h, w, taps);
    const auto e_aa = filter_valid(aa, h, w, taps);
    const auto e_bb = filter_valid(bb, h, w, taps);
    const auto e_ab = filter_valid(ab, h, w, taps);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
      const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
      const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
      const double cov = e_ab[i] - mu_a[i] * mu_b[i];
      sum += ((2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2)) /
             ((mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2));
    }
    total += sum / static_cast<double>(mu_a.size());
  }
  return total / pred.channels();
}

MetricSet evaluate_metrics(const Frame& pred, const Frame& target) {
  MetricSet m;
  m.l1 = loss_l1(pred, target);
  m.l2 = loss_l2(pred, target);
  m.psnr = psnr_from_mse(m.l2);
  m.ssim = (pred.height() >= 11 && pred.width() >= 11)
               ? metric_ssim(pred, target)
               : std::numeric_limits<double>::quiet_NaN();
  return m;
}

}  // namespace sdc
