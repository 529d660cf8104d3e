#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sdc/loss/metrics.hpp"
#include "sdc/pipeline/predict.hpp"

namespace sdc {

struct CompareOptions {
  int sdc_n = kDefaultSdcKernelSize;
  int kernel_n = kDefaultKernelMethodSize;
  FitSchedule schedule = default_schedule(ScheduleMode::quick);
  FitOptions fit;
  FlowEstimatorConfig flow;
};

struct MethodScore {
  std::string method;
  MetricSet metrics;
};

// Rows in fixed order: copy_last, vector, kernel, sdc. copy_last predicts
// the newest frame unchanged; the others use fitted parameters.
std::vector<MethodScore> compare_methods(const SequenceInput& input, const Frame& truth,
                                         const CompareOptions& options = {});

// Header method,l1,l2,psnr,ssim; one row per method.
std::string format_compare_csv(const std::vector<MethodScore>& scores);
void write_compare_csv(const std::vector<MethodScore>& scores, const std::filesystem::path& path);

}  // namespace sdc
