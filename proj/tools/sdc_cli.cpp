// Command-line front end: scene synthesis, flow estimation, fitting,
// prediction, method comparison and the memory estimator.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sdc/core/io.hpp"
#include "sdc/core/parallel.hpp"
#include "sdc/core/scene.hpp"
#include "sdc/optimize/fit.hpp"
#include "sdc/pipeline/compare.hpp"
#include "sdc/pipeline/config.hpp"
#include "sdc/pipeline/flow_estimate.hpp"
#include "sdc/pipeline/memory.hpp"
#include "sdc/pipeline/predict.hpp"
#include "sdc/resample/params.hpp"

namespace fs = std::filesystem;

namespace {

std::string numbered(const std::string& stem, int index, const std::string& ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d%s", stem.c_str(), index, ext.c_str());
  return buf;
}

bool is_image(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".png" || ext == ".ppm" || ext == ".pgm";
}

// Image files of `dir` in filename order, keeping the newest `limit`.
std::vector<sdc::Frame> load_sequence(const fs::path& dir, int limit) {
  if (!fs::is_directory(dir)) throw sdc::IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 2) {
    throw sdc::IoError("need at least two frames in " + dir.string());
  }
  if (static_cast<int>(files.size()) > limit) {
    files.erase(files.begin(), files.end() - limit);
  }
  std::vector<sdc::Frame> frames;
  for (const auto& f : files) frames.push_back(sdc::load_frame(f));
  return frames;
}

sdc::FitOptions fit_options(const sdc::PipelineConfig& cfg, std::uint64_t seed) {
  sdc::FitOptions fit;
  fit.seed = seed;
  fit.init_noise = cfg.init_noise;
  fit.multi_start = cfg.multi_start;
  fit.search_radius = cfg.search_radius;
  fit.weights = cfg.weights;
  fit.extractor = cfg.extractor();
  return fit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatially-displaced convolution toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  std::string config_path;
  app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--config", config_path, "Key = value settings file")->check(CLI::ExistingFile);

  // synth
  auto* synth = app.add_subcommand("synth", "Render the translating-square scene");
  std::string scene = "square";
  sdc::SquareSceneConfig square;
  std::string synth_out;
  synth->add_option("--scene", scene, "Scene name")->check(CLI::IsMember({"square"}));
  synth->add_option("--width", square.width, "Canvas width")->capture_default_str();
  synth->add_option("--height", square.height, "Canvas height")->capture_default_str();
  synth->add_option("--size", square.square_size, "Square side")->capture_default_str();
  synth->add_option("--speed", square.speed, "Pixels per step")->capture_default_str();
  synth->add_option("--steps", square.steps, "Number of frames")->capture_default_str();
  synth->add_option("--start", square.start_x, "Left edge at t=0 (negative: speed)");
  synth->add_option("--out", synth_out, "Output directory")->required();

  // flow
  auto* flow = app.add_subcommand("flow", "Estimate backward flow between two frames");
  std::string flow_prev, flow_next, flow_out;
  flow->add_option("--prev", flow_prev, "Earlier frame")->required()->check(CLI::ExistingFile);
  flow->add_option("--next", flow_next, "Later frame")->required()->check(CLI::ExistingFile);
  flow->add_option("--out", flow_out, "Output .flo")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "Fit per-pixel SDC parameters from source to target");
  std::string fit_source, fit_target, fit_out, fit_report, fit_image, fit_schedule;
  int fit_n = 0;
  bool fit_multi_start = false;
  fit->add_option("--source", fit_source, "Source frame")->required()->check(CLI::ExistingFile);
  fit->add_option("--target", fit_target, "Target frame")->required()->check(CLI::ExistingFile);
  fit->add_option("--n", fit_n, "Kernel size (odd; default from config, 11)");
  fit->add_option("--schedule", fit_schedule, "paper or quick")
      ->check(CLI::IsMember({"paper", "quick"}));
  fit->add_option("--out", fit_out, "Output parameter file")->required();
  fit->add_option("--report", fit_report, "Iteration trace CSV");
  fit->add_option("--image", fit_image, "Final predicted frame");
  fit->add_flag("--multi-start", fit_multi_start, "Integer grid search before phase 1");

  // predict
  auto* predict = app.add_subcommand("predict", "Predict future frames by recirculation");
  std::string pred_frames, pred_method = "sdc", pred_params, pred_out, pred_truth;
  int pred_steps = 1;
  predict->add_option("--frames", pred_frames, "Directory of observed frames")->required();
  predict->add_option("--method", pred_method, "vector, kernel or sdc")
      ->check(CLI::IsMember({"vector", "kernel", "sdc"}))
      ->capture_default_str();
  predict->add_option("--params", pred_params, "Fixed parameters (.sdc or .flo); fitted if absent");
  predict->add_option("--steps", pred_steps, "Frames to predict")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  predict->add_option("--out", pred_out, "Output directory")->required();
  predict->add_option("--truth", pred_truth, "Ground-truth future frames; writes metrics.csv");

  // compare
  auto* compare = app.add_subcommand("compare", "Score copy-last, vector, kernel and SDC");
  std::string cmp_frames, cmp_gt, cmp_out;
  compare->add_option("--frames", cmp_frames, "Directory of observed frames")->required();
  compare->add_option("--gt", cmp_gt, "True next frame")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", cmp_out, "Report CSV")->required();

  // mem
  auto* mem = app.add_subcommand("mem", "Parameter memory per frame");
  int mem_w = 1920, mem_h = 1080, mem_n = 11, mem_bytes = 4, mem_kernel_n = 51;
  mem->add_option("--width", mem_w, "Frame width")->capture_default_str();
  mem->add_option("--height", mem_h, "Frame height")->capture_default_str();
  mem->add_option("--n", mem_n, "SDC kernel size")->capture_default_str();
  mem->add_option("--bytes", mem_bytes, "Bytes per element")->capture_default_str();
  mem->add_option("--kernel-n", mem_kernel_n, "Kernel-based kernel size")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    sdc::set_thread_count(threads);
    sdc::PipelineConfig cfg;
    if (!config_path.empty()) cfg = sdc::load_config(config_path);

    if (*synth) {
      const sdc::SyntheticScene s = sdc::make_translating_square(square);
      fs::create_directories(synth_out);
      const fs::path dir(synth_out);
      for (std::size_t t = 0; t < s.frames.size(); ++t) {
        sdc::save_frame(s.frames[t], dir / numbered("frame", static_cast<int>(t), ".png"));
      }
      for (std::size_t k = 0; k < s.gt_backward_flow.size(); ++k) {
        const int t = static_cast<int>(k) + 1;
        sdc::write_flo(s.gt_backward_flow[k], dir / numbered("gt_flow", t, ".flo"));
        sdc::write_flo(s.correct_sampling[k], dir / numbered("correct_sampling", t, ".flo"));
      }
      std::cout << "wrote " << s.frames.size() << " frames to " << dir.string() << "\n";
    } else if (*flow) {
      const sdc::FlowField f =
          sdc::estimate_flow(sdc::load_frame(flow_prev), sdc::load_frame(flow_next), cfg.flow);
      sdc::write_flo(f, flow_out);
    } else if (*fit) {
      const sdc::Frame source = sdc::load_frame(fit_source);
      const sdc::Frame target = sdc::load_frame(fit_target);
      const int n = fit_n > 0 ? fit_n : cfg.sdc_n;
      const sdc::ScheduleMode mode =
          fit_schedule.empty() ? cfg.schedule_mode : sdc::parse_schedule_mode(fit_schedule);
      sdc::FitOptions options = fit_options(cfg, seed);
      options.multi_start = options.multi_start || fit_multi_start;
      const sdc::FitReport report =
          sdc::fit_transform(source, target, n, cfg.schedule(mode), std::nullopt, options);
      sdc::write_params(report.params, fit_out);
      if (!fit_report.empty()) sdc::write_report_csv(report, fit_report);
      if (!fit_image.empty()) sdc::save_frame(report.prediction, fit_image);
      const auto& last = report.records.back();
      std::printf("final loss %.6g, psnr %.3f dB\n", last.loss, last.psnr);
    } else if (*predict) {
      sdc::SequenceInput input{load_sequence(pred_frames, cfg.context_frames), {}};
      sdc::PredictOptions options;
      options.method = sdc::parse_method(pred_method);
      options.n = options.method == sdc::Method::kernel ? cfg.kernel_n : cfg.sdc_n;
      options.schedule = cfg.schedule();
      options.fit = fit_options(cfg, seed);
      options.flow = cfg.flow;
      std::optional<sdc::TransformParams> fixed;
      if (!pred_params.empty()) fixed = sdc::load_params_source(pred_params);
      std::vector<sdc::Frame> truth;
      if (!pred_truth.empty()) truth = load_sequence(pred_truth, pred_steps);
      const sdc::PredictionRun run =
          sdc::predict_multi(input, options, pred_steps, fixed, truth);
      fs::create_directories(pred_out);
      for (std::size_t k = 0; k < run.predicted.size(); ++k) {
        sdc::save_frame(run.predicted[k],
                        fs::path(pred_out) / numbered("pred", static_cast<int>(k) + 1, ".png"));
      }
      if (!run.metrics.empty()) {
        std::vector<sdc::MethodScore> rows;
        for (std::size_t k = 0; k < run.metrics.size(); ++k) {
          rows.push_back({"step" + std::to_string(k + 1), run.metrics[k]});
        }
        sdc::write_compare_csv(rows, fs::path(pred_out) / "metrics.csv");
      }
    } else if (*compare) {
      sdc::SequenceInput input{load_sequence(cmp_frames, cfg.context_frames), {}};
      sdc::CompareOptions options;
      options.sdc_n = cfg.sdc_n;
      options.kernel_n = cfg.kernel_n;
      options.schedule = cfg.schedule();
      options.fit = fit_options(cfg, seed);
      options.flow = cfg.flow;
      const auto scores = sdc::compare_methods(input, sdc::load_frame(cmp_gt), options);
      sdc::write_compare_csv(scores, cmp_out);
      std::cout << sdc::format_compare_csv(scores);
    } else if (*mem) {
      std::cout << sdc::memory_report(mem_w, mem_h, mem_n, mem_bytes, mem_kernel_n);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
