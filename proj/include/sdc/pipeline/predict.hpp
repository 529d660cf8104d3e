#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "sdc/core/fields.hpp"
#include "sdc/core/frame.hpp"
#include "sdc/loss/metrics.hpp"
#include "sdc/optimize/fit.hpp"
#include "sdc/pipeline/flow_estimate.hpp"
#include "sdc/resample/params.hpp"

namespace sdc {

inline constexpr int kDefaultContextFrames = 5;

enum class Method { vector, kernel, sdc };

Method parse_method(std::string_view name);
std::string_view to_string(Method method);

// Observed frames I_1..I_t, oldest first, and optionally the backward flows
// F_2..F_t (flows[i] maps frames[i+1] onto frames[i]).
struct SequenceInput {
  std::vector<Frame> frames;
  std::vector<FlowField> flows;
};

// Throws std::invalid_argument unless there are >= 2 equally sized frames
// and the flow list is empty or one shorter than the frame list.
void validate(const SequenceInput& input);

struct PredictOptions {
  Method method = Method::sdc;
  int n = 0;  // kernel size; 0 picks 11 for sdc and 51 for kernel
  FitSchedule schedule = default_schedule(ScheduleMode::quick);
  FitOptions fit;
  FlowEstimatorConfig flow;

  int kernel_size() const;
};

// Applies the method's operator to `frame` (vector: motion only, kernel:
// kernels only, sdc: both).
Frame apply_transform(const Frame& frame, const TransformParams& params, Method method);

// Moves each pixel's parameters along the constant-velocity path given by
// the backward flow of the newest frame: the parameters of pixel p land at
// round(p - flow(p)). Collisions keep the faster-moving source; pixels no
// source lands on keep their own parameters.
TransformParams transport_params(const TransformParams& params, const FlowField& flow);

// Reads a fixed parameter source: a TransformParams file, or a Middlebury
// .flo sampling field (recognized by its magic), which becomes motion with
// N = 1 pass-through kernels. Throws IoError if the file is missing.
TransformParams load_params_source(const std::filesystem::path& path);

// Parameters for the next step. Fitted mode fits I_{t-1} -> I_t starting
// from the newest backward flow (zero motion for the kernel method) and
// middle-one-hot kernels, then transports the result one step forward.
TransformParams fit_next_params(const SequenceInput& input, const PredictOptions& options);

// Transform of the newest frame I_t only. With `fixed` parameters no
// fitting happens.
Frame predict_next(const SequenceInput& input, const PredictOptions& options,
                   const std::optional<TransformParams>& fixed = std::nullopt);

struct PredictionRun {
  Method method = Method::sdc;
  std::vector<Frame> predicted;
  std::vector<MetricSet> metrics;  // per step, when ground truth was given
};

// Recirculates each prediction as the newest input, dropping the oldest
// frame so the window length stays fixed. Flows for recirculated frames
// are re-estimated against their predecessor.
PredictionRun predict_multi(const SequenceInput& input, const PredictOptions& options, int steps,
                            const std::optional<TransformParams>& fixed = std::nullopt,
                            const std::vector<Frame>& truth = {});

}  // namespace sdc
