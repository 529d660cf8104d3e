#include "sdc/optimize/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include "sdc/core/io.hpp"
#include "sdc/loss/metrics.hpp"
#include "sdc/optimize/adam.hpp"
#include "sdc/resample/warp.hpp"

namespace sdc {
namespace {

struct PhaseMask {
  bool motion;
  bool kernels;
};

PhaseMask mask_for(const FitPhase& phase, const FitOptions& options) {
  PhaseMask mask{phase.trainable != Trainable::kernels_only,
                 phase.trainable != Trainable::motion_only};
  if (options.freeze_motion) mask.motion = false;
  if (options.freeze_kernels) mask.kernels = false;
  return mask;
}

std::string where(int phase, int iteration) {
  return "phase " + std::to_string(phase) + ", iteration " + std::to_string(iteration);
}

// Loss value and, when requested, the gradients for one iteration.
struct Evaluation {
  double loss = 0.0;
  Frame prediction;
  TransformGradients grads;
};

}  // namespace

TransformParams noisy_identity(int height, int width, int n, double noise, std::uint64_t seed) {
  TransformParams params = TransformParams::identity(height, width, n);
  if (noise > 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-noise, noise);
    for (double& w : params.kernels.ku_data()) w += jitter(rng);
    for (double& w : params.kernels.kv_data()) w += jitter(rng);
  }
  return params;
}

MotionField grid_search_motion(const Frame& source, const Frame& target, int radius) {
  require_same_shape(source, target, "grid_search_motion");
  const int h = source.height();
  const int w = source.width();
  const int channels = source.channels();

  std::vector<std::pair<int, int>> candidates;
  for (int dv = -radius; dv <= radius; ++dv) {
    for (int du = -radius; du <= radius; ++du) candidates.emplace_back(du, dv);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](auto a, auto b) {
    return a.first * a.first + a.second * a.second < b.first * b.first + b.second * b.second;
  });

  MotionField best(h, w);
  std::vector<double> best_cost(static_cast<std::size_t>(h) * w,
                                std::numeric_limits<double>::infinity());
  std::vector<double> cost(best_cost.size());
  for (auto [du, dv] : candidates) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int sy = std::clamp(y + dv, 0, h - 1);
        const int sx = std::clamp(x + du, 0, w - 1);
        double c = 0.0;
        for (int ch = 0; ch < channels; ++ch) {
          c += std::abs(source.at(sy, sx, ch) - target.at(y, x, ch));
        }
        cost[static_cast<std::size_t>(y) * w + x] = c;
      }
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double windowed = 0.0;
        for (int wy = std::max(0, y - 1); wy <= std::min(h - 1, y + 1); ++wy) {
          for (int wx = std::max(0, x - 1); wx <= std::min(w - 1, x + 1); ++wx) {
            windowed += cost[static_cast<std::size_t>(wy) * w + wx];
          }
        }
        const auto p = static_cast<std::size_t>(y) * w + x;
        if (windowed < best_cost[p]) {
          best_cost[p] = windowed;
          best.u(y, x) = du;
          best.v(y, x) = dv;
        }
      }
    }
  }
  return best;
}

FitReport fit_transform(const Frame& source, const Frame& target, int n,
                        const FitSchedule& schedule,
                        const std::optional<TransformParams>& init,
                        const FitOptions& options) {
  require_same_shape(source, target, "fit_transform");
  validate(schedule);
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("fit_transform: kernel size must be odd");

  TransformParams params = init ? *init
                                : noisy_identity(source.height(), source.width(), n,
                                                 options.init_noise, options.seed);
  validate(params);
  if (params.n() != n || params.height() != source.height() ||
      params.width() != source.width()) {
    throw std::invalid_argument("fit_transform: initial parameters do not match the frames");
  }
  if (options.multi_start && !options.freeze_motion) {
    params.motion = grid_search_motion(source, target, options.search_radius);
  }

  const bool needs_features = std::any_of(
      schedule.phases.begin(), schedule.phases.end(),
      [](const FitPhase& p) { return p.loss == PhaseLoss::finetune; });
  std::optional<FinetuneObjective> finetune;
  if (needs_features) {
    finetune.emplace(target, options.extractor ? *options.extractor : FeatureExtractor::standard(),
                     options.weights);
  }

  auto evaluate = [&](PhaseLoss loss, bool with_grads, int phase, int iteration) {
    Evaluation e;
    e.prediction = warp_sdc(source, params);
    Frame loss_grad;
    switch (loss) {
      case PhaseLoss::l1:
        e.loss = loss_l1(e.prediction, target);
        if (with_grads) loss_grad = loss_l1_grad(e.prediction, target);
        break;
      case PhaseLoss::finetune:
        if (with_grads) {
          auto result = finetune->evaluate(e.prediction);
          e.loss = result.value;
          loss_grad = std::move(result.grad);
        } else {
          e.loss = finetune->value(e.prediction);
        }
        break;
      case PhaseLoss::kernel_init: {
        e.loss = loss_kernel_init(params.kernels);
        if (with_grads) {
          auto kg = loss_kernel_init_grad(params.kernels);
          e.grads = TransformGradients(params.height(), params.width(), n);
          e.grads.d_ku = std::move(kg.d_ku);
          e.grads.d_kv = std::move(kg.d_kv);
        }
        break;
      }
    }
    if (!std::isfinite(e.loss)) {
      throw FitError("non-finite loss at " + where(phase, iteration));
    }
    if (with_grads && loss != PhaseLoss::kernel_init) {
      e.grads = sdc_backward(source, params, loss_grad);
    }
    return e;
  };

  auto make_record = [&](int phase, int iteration, const Evaluation& e) {
    FitRecord r{phase, iteration, e.loss, std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()};
    if (options.record_metrics) {
      const MetricSet m = evaluate_metrics(e.prediction, target);
      r.psnr = m.psnr;
      r.ssim = m.ssim;
    }
    return r;
  };

  FitReport report;
  report.records.reserve(schedule.total_iterations());
  int iteration = 0;
  for (std::size_t pi = 0; pi < schedule.phases.size(); ++pi) {
    const FitPhase& phase = schedule.phases[pi];
    const int phase_no = static_cast<int>(pi) + 1;
    const PhaseMask mask = mask_for(phase, options);

    if (!mask.motion && !mask.kernels) {
      // Nothing to optimize; the loss is constant over the phase.
      const Evaluation e = evaluate(phase.loss, false, phase_no, iteration);
      const FitRecord record = make_record(phase_no, iteration, e);
      for (int k = 0; k < phase.iterations; ++k) {
        report.records.push_back(record);
        report.records.back().iteration = iteration++;
      }
      continue;
    }

    const AdamConfig adam{phase.learning_rate};
    const std::size_t pixels = params.motion.pixel_count();
    const std::size_t taps = params.kernels.ku_data().size();
    AdamState u_state(pixels, adam), v_state(pixels, adam);
    AdamState ku_state(taps, adam), kv_state(taps, adam);

    for (int k = 0; k < phase.iterations; ++k, ++iteration) {
      const Evaluation e = evaluate(phase.loss, true, phase_no, iteration);
      report.records.push_back(make_record(phase_no, iteration, e));
      try {
        if (mask.motion) {
          adam_step(params.motion.u_data(), e.grads.d_u, u_state);
          adam_step(params.motion.v_data(), e.grads.d_v, v_state);
        }
        if (mask.kernels) {
          adam_step(params.kernels.ku_data(), e.grads.d_ku, ku_state);
          adam_step(params.kernels.kv_data(), e.grads.d_kv, kv_state);
        }
      } catch (const NonFiniteGradient& err) {
        throw FitError(std::string(err.what()) + " at " + where(phase_no, iteration));
      }
    }
  }

  report.prediction = warp_sdc(source, params);
  report.params = std::move(params);
  return report;
}

void write_report_csv(const FitReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "phase,iteration,loss,psnr,ssim\n";
  char line[160];
  for (const auto& r : report.records) {
    std::snprintf(line, sizeof line, "%d,%d,%.9g,%.6f,%.6f\n", r.phase, r.iteration, r.loss,
                  r.psnr, r.ssim);
    out << line;
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sdc
