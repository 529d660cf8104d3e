#pragma once

#include <array>

#include "sdc/core/frame.hpp"

namespace sdc {

// 10 * log10(1 / mse) for peak value 1.0; +infinity when mse == 0.
double psnr_from_mse(double mse);
double metric_psnr(const Frame& pred, const Frame& target);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

// Mean local SSIM over all window positions that fit inside the image
// (no padding), Gaussian-weighted; multi-channel frames average the
// per-channel scores. Throws std::invalid_argument if H or W < window.
double metric_ssim(const Frame& pred, const Frame& target, const SsimParams& params = {});

// The four evaluation numbers reported per method.
struct MetricSet {
  double l1 = 0.0;
  double l2 = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
};

// SSIM is reported as NaN when the frame is smaller than the window.
MetricSet evaluate_metrics(const Frame& pred, const Frame& target);

}  // namespace sdc
