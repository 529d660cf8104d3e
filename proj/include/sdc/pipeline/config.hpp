#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdc/loss/features.hpp"
#include "sdc/loss/losses.hpp"
#include "sdc/optimize/schedule.hpp"
#include "sdc/pipeline/flow_estimate.hpp"
#include "sdc/resample/params.hpp"

namespace sdc {

// Settings shared by the CLI commands. Every field has a built-in default;
// a config file overrides individual keys.
//
// Recognized keys:
//   sdc_n, kernel_n, context_frames
//   schedule (quick|paper), lr_scale
//   phase<K>.iterations, phase<K>.lr          (K is 1-based)
//   loss.w_l1, loss.w_perceptual, loss.w_style
//   extractor.seed, extractor.channels        (comma-separated, e.g. 16,32,64)
//   flow.levels, flow.block, flow.radius
//   fit.init_noise, fit.multi_start, fit.search_radius
struct PipelineConfig {
  int sdc_n = kDefaultSdcKernelSize;
  int kernel_n = kDefaultKernelMethodSize;
  int context_frames = 5;
  ScheduleMode schedule_mode = ScheduleMode::quick;
  double lr_scale = kDirectFitLrScale;
  std::map<int, int> phase_iterations;
  std::map<int, double> phase_lr;
  LossWeights weights;
  std::uint64_t extractor_seed = kDefaultExtractorSeed;
  std::vector<int> extractor_channels{16, 32, 64};
  FlowEstimatorConfig flow;
  double init_noise = 0.01;
  bool multi_start = false;
  int search_radius = 4;

  // Default schedule for `mode` with the per-phase overrides applied.
  FitSchedule schedule(ScheduleMode mode) const;
  FitSchedule schedule() const { return schedule(schedule_mode); }
  FeatureExtractor extractor() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lines are `key = value`; blank lines and lines starting with '#' are
// ignored. Unknown keys and malformed values throw ConfigError naming the
// line.
PipelineConfig parse_config(const std::string& text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

}  // namespace sdc
