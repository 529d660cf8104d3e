#include "sdc/pipeline/predict.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "sdc/core/io.hpp"
#include "sdc/resample/warp.hpp"

namespace sdc {

Method parse_method(std::string_view name) {
  if (name == "vector") return Method::vector;
  if (name == "kernel") return Method::kernel;
  if (name == "sdc") return Method::sdc;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected vector, kernel or sdc)");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::vector: return "vector";
    case Method::kernel: return "kernel";
    case Method::sdc: return "sdc";
  }
  return "?";
}

void validate(const SequenceInput& input) {
  if (input.frames.size() < 2) {
    throw std::invalid_argument("a sequence needs at least two frames");
  }
  for (const Frame& f : input.frames) require_same_shape(input.frames.front(), f, "sequence");
  if (!input.flows.empty()) {
    if (input.flows.size() + 1 != input.frames.size()) {
      throw std::invalid_argument("a sequence of T frames needs T-1 flows");
    }
    for (const auto& flow : input.flows) {
      if (flow.height() != input.frames.front().height() ||
          flow.width() != input.frames.front().width()) {
        throw std::invalid_argument("flow and frame dimensions differ");
      }
    }
  }
}

int PredictOptions::kernel_size() const {
  if (n > 0) return n;
  return method == Method::kernel ? kDefaultKernelMethodSize : kDefaultSdcKernelSize;
}

Frame apply_transform(const Frame& frame, const TransformParams& params, Method method) {
  switch (method) {
    case Method::vector:
      return warp_vector(frame, params.motion);
    case Method::kernel: {
      // warp_sdc with zero motion equals warp_kernel on the expanded kernels
      // without materializing N*N weights per pixel.
      TransformParams centred{MotionField(params.height(), params.width()), params.kernels};
      return warp_sdc(frame, centred);
    }
    case Method::sdc:
      return warp_sdc(frame, params);
  }
  throw std::logic_error("unhandled method");
}

TransformParams transport_params(const TransformParams& params, const FlowField& flow) {
  const int h = params.height();
  const int w = params.width();
  const int n = params.n();
  if (flow.height() != h || flow.width() != w) {
    throw std::invalid_argument("transport_params: flow and parameter sizes differ");
  }
  TransformParams out = params;
  std::vector<double> claimed_speed(static_cast<std::size_t>(h) * w, -1.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double u = flow.u(y, x);
      const double v = flow.v(y, x);
      const long tx = std::lround(x - u);
      const long ty = std::lround(y - v);
      if (tx < 0 || tx >= w || ty < 0 || ty >= h) continue;
      const auto t = static_cast<std::size_t>(ty) * w + tx;
      const double speed = u * u + v * v;
      if (speed <= claimed_speed[t]) continue;
      claimed_speed[t] = speed;
      out.motion.u_data()[t] = params.motion.u(y, x);
      out.motion.v_data()[t] = params.motion.v(y, x);
      const auto s = (static_cast<std::size_t>(y) * w + x) * n;
      std::copy_n(params.kernels.ku_data().begin() + s, n, out.kernels.ku_data().begin() + t * n);
      std::copy_n(params.kernels.kv_data().begin() + s, n, out.kernels.kv_data().begin() + t * n);
    }
  }
  return out;
}

TransformParams load_params_source(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("params file not found: " + path.string());
  char magic[4] = {};
  {
    std::ifstream in(path, std::ios::binary);
    in.read(magic, 4);
  }
  if (std::string_view(magic, 4) == "PIEH") {
    const FlowField flow = read_flo(path);
    TransformParams params = TransformParams::identity(flow.height(), flow.width(), 1);
    params.motion = to_motion(flow);
    return params;
  }
  return read_params(path);
}

TransformParams fit_next_params(const SequenceInput& input, const PredictOptions& options) {
  validate(input);
  const Frame& prev = input.frames[input.frames.size() - 2];
  const Frame& last = input.frames.back();
  const FlowField flow =
      input.flows.empty() ? estimate_flow(prev, last, options.flow) : input.flows.back();

  const int n = options.kernel_size();
  TransformParams init = TransformParams::identity(last.height(), last.width(), n);
  if (options.method != Method::kernel) init.motion = to_motion(flow);

  FitOptions fit = options.fit;
  fit.freeze_kernels = options.method == Method::vector;
  fit.freeze_motion = options.method == Method::kernel;
  const FitReport report = fit_transform(prev, last, n, options.schedule, init, fit);
  return transport_params(report.params, flow);
}

Frame predict_next(const SequenceInput& input, const PredictOptions& options,
                   const std::optional<TransformParams>& fixed) {
  validate(input);
  const Frame& last = input.frames.back();
  if (fixed) {
    if (fixed->height() != last.height() || fixed->width() != last.width()) {
      throw std::invalid_argument("parameter file does not match the frame size");
    }
    return apply_transform(last, *fixed, options.method);
  }
  return apply_transform(last, fit_next_params(input, options), options.method);
}

PredictionRun predict_multi(const SequenceInput& input, const PredictOptions& options, int steps,
                            const std::optional<TransformParams>& fixed,
                            const std::vector<Frame>& truth) {
  validate(input);
  if (steps < 1) throw std::invalid_argument("predict_multi: steps must be >= 1");
  PredictionRun run;
  run.method = options.method;
  SequenceInput window = input;
  for (int k = 0; k < steps; ++k) {
    Frame next = predict_next(window, options, fixed);
    if (k < static_cast<int>(truth.size())) run.metrics.push_back(evaluate_metrics(next, truth[k]));
    if (!window.flows.empty()) {
      window.flows.erase(window.flows.begin());
      window.flows.push_back(estimate_flow(window.frames.back(), next, options.flow));
    }
    window.frames.erase(window.frames.begin());
    window.frames.push_back(next);
    run.predicted.push_back(std::move(next));
  }
  return run;
}

}  // namespace sdc
