#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sdc/core/frame.hpp"
#include "sdc/loss/features.hpp"
#include "sdc/loss/losses.hpp"
#include "sdc/optimize/schedule.hpp"
#include "sdc/resample/params.hpp"

namespace sdc {

struct FitRecord {
  int phase = 0;      // 1-based phase index
  int iteration = 0;  // global, 0-based, increasing across phases
  double loss = 0.0;  // phase loss before this iteration's update
  double psnr = 0.0;
  double ssim = 0.0;  // NaN for frames smaller than the SSIM window
};

struct FitReport {
  std::vector<FitRecord> records;
  TransformParams params;
  Frame prediction;
};

struct FitOptions {
  std::uint64_t seed = 0;
  // Half-width of the uniform noise added to middle-one-hot kernels when
  // no initial parameters are given.
  double init_noise = 0.01;
  // Integer grid search over (u, v) in [-search_radius, search_radius]^2
  // to seed the motion before the first phase.
  bool multi_start = false;
  int search_radius = 4;
  // Freezing reduces the SDC to its vector-based (kernels frozen at their
  // initial values) or kernel-based (motion frozen) special case.
  bool freeze_motion = false;
  bool freeze_kernels = false;
  bool record_metrics = true;
  LossWeights weights;
  std::optional<FeatureExtractor> extractor;  // standard() when unset
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Optimizes per-pixel transform parameters so that warp_sdc(source, params)
// matches target, running the schedule's phases in order. Each phase has
// its own Adam state and only updates its trainable subset.
FitReport fit_transform(const Frame& source, const Frame& target, int n,
                        const FitSchedule& schedule,
                        const std::optional<TransformParams>& init = std::nullopt,
                        const FitOptions& options = {});

// Middle-one-hot kernels plus uniform noise in [-noise, noise], zero motion.
TransformParams noisy_identity(int height, int width, int n, double noise, std::uint64_t seed);

// Per-pixel integer displacement minimizing the 3x3-windowed L1 cost between
// the shifted source and the target; ties go to the shorter displacement.
MotionField grid_search_motion(const Frame& source, const Frame& target, int radius);

// CSV with header phase,iteration,loss,psnr,ssim.
void write_report_csv(const FitReport& report, const std::filesystem::path& path);

}  // namespace sdc
