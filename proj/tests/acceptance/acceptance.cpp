// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sdc/core/io.hpp"
#include "sdc/core/parallel.hpp"
#include "sdc/core/scene.hpp"
#include "sdc/loss/losses.hpp"
#include "sdc/loss/metrics.hpp"
#include "sdc/optimize/fit.hpp"
#include "sdc/pipeline/memory.hpp"
#include "sdc/pipeline/predict.hpp"
#include "sdc/resample/warp.hpp"

namespace fs = std::filesystem;
using namespace sdc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

TransformParams random_params(std::mt19937_64& rng, int h, int w, int n, double motion_range) {
  std::uniform_real_distribution<double> m(-motion_range, motion_range);
  std::uniform_real_distribution<double> k(-0.5, 1.0);
  TransformParams p = TransformParams::identity(h, w, n);
  for (double& u : p.motion.u_data()) u = m(rng);
  for (double& v : p.motion.v_data()) v = m(rng);
  for (double& x : p.kernels.ku_data()) x = k(rng);
  for (double& x : p.kernels.kv_data()) x = k(rng);
  return p;
}

// ---------------------------------------------------------------------------

Outcome reduction_identities() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(1, 16);
  std::uniform_int_distribution<int> chan(1, 3);
  const int sizes[] = {1, 3, 5, 11};
  double worst_vector = 0.0;
  double worst_kernel = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = sizes[trial % 4];
    const int h = dim(rng);
    const int w = dim(rng);
    const Frame f = oracle::random_frame(rng, h, w, chan(rng));
    const TransformParams p = random_params(rng, h, w, n, 6.0);
    const TransformParams one_hot{p.motion, SeparableKernelField::middle_one_hot(h, w, n)};
    worst_vector =
        std::max(worst_vector, oracle::max_abs_diff(warp_sdc(f, one_hot), warp_vector(f, p.motion)));
    const TransformParams still{MotionField(h, w), p.kernels};
    worst_kernel = std::max(worst_kernel, oracle::max_abs_diff(warp_sdc(f, still),
                                                               warp_kernel(f, expand_separable(p.kernels))));
  }
  const double t = seconds_since(start);
  return {worst_vector <= 1e-6 && worst_kernel <= 1e-6 && t < 10.0,
          fmt("200 instances, max|sdc(one-hot)-vector|=%.2e, max|sdc(u=v=0)-kernel|=%.2e, %.2fs",
              worst_vector, worst_kernel, t)};
}

Outcome non_composition() {
  const int w = 8;
  Frame f(1, w, 1);
  // Ramp with a step.
  for (int x = 0; x < w; ++x) f.at(0, x) = static_cast<double>(x) / (w - 1) + (x >= w / 2 ? 0.25 : 0.0);
  TransformParams p = TransformParams::identity(1, w, 3);
  for (double& u : p.motion.u_data()) u = 0.5;
  for (int x = 0; x < w; ++x)
    for (int j = 0; j < 3; ++j) p.kernels.ku(0, x)[j] = 1.0 / 3.0;
  const Frame direct = warp_sdc(f, p);
  const Frame composed = warp_kernel(warp_vector(f, p.motion), expand_separable(p.kernels));
  int differing = 0;
  double largest = 0.0;
  for (int x = 0; x < w; ++x) {
    const double d = std::abs(direct.at(0, x) - composed.at(0, x));
    largest = std::max(largest, d);
    if (d > 1e-3) ++differing;
  }
  return {differing >= 1,
          fmt("u=0.5 box kernel on ramp+step: %d pixel(s) differ by >1e-3, max %.4f", differing,
              largest)};
}

// Finite-difference gradient suite -------------------------------------------

struct GradTally {
  int instances = 0;
  long checked = 0;
  long failed = 0;
  double worst_rel = 0.0;  // over entries with magnitude above 1e-3

  void record(double analytic, double numeric) {
    ++checked;
    if (!oracle::grad_close(analytic, numeric)) ++failed;
    if (std::max(std::abs(analytic), std::abs(numeric)) > 1e-3) {
      worst_rel = std::max(worst_rel, oracle::relative_error(analytic, numeric));
    }
  }
};

void check_frame_grad(GradTally& tally, const std::function<double(const Frame&)>& loss,
                      Frame pred, const Frame& analytic) {
  const double h = 1e-6;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double& p = pred.data()[i];
    auto f = [&] { return loss(pred); };
    const double fwd = oracle::numeric_derivative(f, p, h, oracle::Side::forward);
    const double bwd = oracle::numeric_derivative(f, p, h, oracle::Side::backward);
    if (!oracle::grad_close(fwd, bwd, 1e-2, 1e-5)) continue;  // kink: |x|, ReLU
    tally.record(analytic.data()[i], oracle::numeric_derivative(f, p, h));
  }
}

Outcome gradient_suite() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(103);
  GradTally tally;
  const double h = 1e-6;

  // Displaced convolution with respect to all four parameter arrays.
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + 2 * (trial % 3);
    const int height = 2 + trial % 4;
    const int width = 2 + (trial * 3) % 5;
    const Frame f = oracle::random_frame(rng, height, width, 1 + trial % 3);
    TransformParams p = random_params(rng, height, width, n, 3.0);
    const Frame g = oracle::random_frame(rng, height, width, f.channels());
    const TransformGradients grads = sdc_backward(f, p, g);
    auto loss = [&] { return oracle::contract(g, oracle::warp_sdc_per_tap(f, p)); };
    for (std::size_t i = 0; i < p.motion.pixel_count(); ++i) {
      const int x = static_cast<int>(i) % width;
      const int y = static_cast<int>(i) / width;
      const auto su = oracle::side_for_coordinate(x + p.motion.u_data()[i], h);
      const auto sv = oracle::side_for_coordinate(y + p.motion.v_data()[i], h);
      tally.record(grads.d_u[i], oracle::numeric_derivative(loss, p.motion.u_data()[i], h, su));
      tally.record(grads.d_v[i], oracle::numeric_derivative(loss, p.motion.v_data()[i], h, sv));
    }
    for (std::size_t i = 0; i < p.kernels.ku_data().size(); ++i) {
      tally.record(grads.d_ku[i], oracle::numeric_derivative(loss, p.kernels.ku_data()[i], h));
      tally.record(grads.d_kv[i], oracle::numeric_derivative(loss, p.kernels.kv_data()[i], h));
    }
    ++tally.instances;
  }

  // Pixel losses.
  for (int trial = 0; trial < 20; ++trial) {
    const Frame pred = oracle::random_frame(rng, 3 + trial % 3, 4, 1 + trial % 3);
    const Frame target = oracle::random_frame(rng, pred.height(), 4, pred.channels());
    if (trial % 2 == 0) {
      check_frame_grad(tally, [&](const Frame& p) { return loss_l1(p, target); }, pred,
                       loss_l1_grad(pred, target));
    } else {
      check_frame_grad(tally, [&](const Frame& p) { return loss_l2(p, target); }, pred,
                       loss_l2_grad(pred, target));
    }
    ++tally.instances;
  }

  // Feature losses: perceptual, style and their weighted combination.
  const FeatureExtractor extractor = FeatureExtractor::standard();
  const LossWeights weight_sets[] = {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.2, 0.06, 36.0}};
  for (int trial = 0; trial < 12; ++trial) {
    const int channels = trial % 2 == 0 ? 3 : 1;
    const Frame pred = oracle::random_frame(rng, 8, 8, channels);
    const Frame target = oracle::random_frame(rng, 8, 8, channels);
    const FinetuneObjective objective(target, extractor, weight_sets[trial % 3]);
    check_frame_grad(tally, [&](const Frame& p) { return objective.value(p); }, pred,
                     objective.evaluate(pred).grad);
    ++tally.instances;
  }

  // Kernel-initialization loss.
  for (int trial = 0; trial < 10; ++trial) {
    TransformParams p = random_params(rng, 3, 3, 1 + 2 * (trial % 4), 0.0);
    const KernelInitGrad grads = loss_kernel_init_grad(p.kernels);
    auto loss = [&] { return loss_kernel_init(p.kernels); };
    for (std::size_t i = 0; i < p.kernels.ku_data().size(); ++i) {
      tally.record(grads.d_ku[i], oracle::numeric_derivative(loss, p.kernels.ku_data()[i], h));
      tally.record(grads.d_kv[i], oracle::numeric_derivative(loss, p.kernels.kv_data()[i], h));
    }
    ++tally.instances;
  }

  const double t = seconds_since(start);
  return {tally.instances >= 100 && tally.failed == 0 && tally.worst_rel <= 1e-3 && t < 60.0,
          fmt("%d instances, %ld partials, %ld outside tolerance, max rel err %.2e, %.1fs",
              tally.instances, tally.checked, tally.failed, tally.worst_rel, t)};
}

Outcome fig4_reproduction() {
  const SyntheticScene s = make_translating_square({});
  const Frame& prev = s.frames[0];
  const Frame& next = s.frames[1];

  // Through the .flo files, as the CLI hands them over.
  const fs::path dir = fs::temp_directory_path() / "sdc_acceptance_fig4";
  fs::create_directories(dir);
  write_flo(s.gt_backward_flow[0], dir / "gt.flo");
  write_flo(s.correct_sampling[0], dir / "fix.flo");
  const Frame naive = warp_vector(prev, to_motion(read_flo(dir / "gt.flo")));
  const Frame fixed = warp_vector(prev, to_motion(read_flo(dir / "fix.flo")));

  // Square at {1,2} in frame t, at {2,3} in frame t+1. The naive warp keeps
  // pixel 1 (now background) on the square: a duplicated left border.
  const std::vector<double> expected_naive{0, 1, 1, 1, 0, 0};
  bool naive_ok = true;
  for (int x = 0; x < 6; ++x) naive_ok = naive_ok && naive.at(0, x) == expected_naive[x];
  const bool binary = std::all_of(fixed.data().begin(), fixed.data().end(),
                                  [](double v) { return v == 0.0 || v == 1.0; });
  const bool exact = fixed == next;
  auto row = [](const Frame& f) {
    std::string out;
    for (int x = 0; x < f.width(); ++x) out += f.at(0, x) == 1.0 ? '1' : (f.at(0, x) == 0.0 ? '0' : '?');
    return out;
  };
  return {naive_ok && exact && binary,
          "t=" + row(prev) + " t+1=" + row(next) + " gt-flow warp=" + row(naive) +
              " corrected warp=" + row(fixed) + (exact ? " (bit-exact)" : " (mismatch)")};
}

struct ShiftFit {
  double psnr = 0.0;
  double median_error = 0.0;
  double seconds = 0.0;
};

// Fits a constant (2, -1) bilinear shift of a smooth 64x64 image with the
// paper-shaped schedule; scores the interior, away from where the kernel
// footprint or the motion reaches the clamped border.
ShiftFit fit_known_shift(double init_noise) {
  const auto start = std::chrono::steady_clock::now();
  const int size = 64;
  const Frame source = oracle::smooth_image(size, size);
  MotionField truth(size, size);
  for (double& u : truth.u_data()) u = 2.0;
  for (double& v : truth.v_data()) v = -1.0;
  const Frame target = warp_vector(source, truth);

  FitOptions options;
  options.record_metrics = false;
  options.init_noise = init_noise;
  const FitReport r = fit_transform(source, target, kDefaultSdcKernelSize,
                                    default_schedule(ScheduleMode::paper_shaped), std::nullopt,
                                    options);
  ShiftFit out;
  out.seconds = seconds_since(start);

  const int margin = 8;
  double se = 0.0;
  long count = 0;
  std::vector<double> motion_err;
  for (int y = margin; y < size - margin; ++y) {
    for (int x = margin; x < size - margin; ++x) {
      for (int c = 0; c < 3; ++c) {
        const double d = r.prediction.at(y, x, c) - target.at(y, x, c);
        se += d * d;
        ++count;
      }
      motion_err.push_back(std::hypot(r.params.motion.u(y, x) - 2.0, r.params.motion.v(y, x) + 1.0));
    }
  }
  out.psnr = psnr_from_mse(se / count);
  std::nth_element(motion_err.begin(), motion_err.begin() + motion_err.size() / 2, motion_err.end());
  out.median_error = motion_err[motion_err.size() / 2];
  return out;
}

// Decided on the direct initialization (zero motion, exact middle-one-hot
// kernels). The noisy initialization is reported alongside: its kernel gain
// error biases the motion-only phase, and the joint phase lets the kernels
// absorb the residual instead of the motion.
Outcome fit_convergence() {
  set_thread_count(1);
  const ShiftFit direct = fit_known_shift(0.0);
  const ShiftFit noisy = fit_known_shift(0.01);
  set_thread_count(0);
  return {direct.psnr >= 40.0 && direct.median_error <= 0.1 && direct.seconds < 300.0,
          fmt("64x64 smooth image, shift (2,-1), %d iterations, direct init: interior PSNR %.2f dB, "
              "median motion error %.4f px, %.1fs single-threaded (init noise 0.01: %.2f dB, "
              "%.4f px)",
              default_schedule(ScheduleMode::paper_shaped).total_iterations(), direct.psnr,
              direct.median_error, direct.seconds, noisy.psnr, noisy.median_error)};
}

Outcome kernel_init_convergence() {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double worst_ratio = 0.0;
  int non_monotone = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + 2 * (trial % 6);
    TransformParams init = TransformParams::identity(4, 5, n);
    for (double& k : init.kernels.ku_data()) k = d(rng);
    for (double& k : init.kernels.kv_data()) k = d(rng);
    const Frame f(4, 5, 1, 0.5);
    FitOptions options;
    options.record_metrics = false;
    const FitReport r = fit_transform(
        f, f, n, FitSchedule{{{Trainable::kernels_only, PhaseLoss::kernel_init, 1e-2, 500}}}, init,
        options);
    const double initial = r.records.front().loss;
    worst_ratio = std::max(worst_ratio, loss_kernel_init(r.params.kernels) / initial);
    for (std::size_t i = 11; i < r.records.size(); ++i) {
      if (r.records[i].loss > r.records[i - 1].loss) {
        ++non_monotone;
        break;
      }
    }
  }
  return {worst_ratio <= 1e-4 && non_monotone == 0,
          fmt("10 random inits in [-1,1], lr 1e-2, 500 iterations: worst final/initial %.2e, %d "
              "run(s) non-monotone after iteration 10",
              worst_ratio, non_monotone)};
}

Outcome metric_oracles() {
  std::mt19937_64 rng(107);
  double identical = 0.0;
  double ssim_err = 0.0;
  double psnr_err = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int c = trial % 2 == 0 ? 1 : 3;
    const Frame a = oracle::random_frame(rng, 32, 32, c);
    const Frame b = oracle::random_frame(rng, 32, 32, c);
    Frame near = a;
    std::normal_distribution<double> noise(0.0, 0.05);
    for (double& v : near.data()) v += noise(rng);
    identical = std::max(identical, std::abs(metric_ssim(a, a) - 1.0));
    ssim_err = std::max({ssim_err, std::abs(metric_ssim(a, b) - oracle::ssim(a, b)),
                         std::abs(metric_ssim(a, near) - oracle::ssim(a, near))});
    psnr_err = std::max({psnr_err, std::abs(metric_psnr(a, b) - oracle::psnr(a, b)),
                         std::abs(metric_psnr(a, near) - oracle::psnr(a, near))});
  }
  const double p = psnr_from_mse(0.01);
  return {identical <= 1e-9 && ssim_err <= 1e-6 && psnr_err <= 1e-6 && p == 20.0,
          fmt("|SSIM(a,a)-1|=%.1e, SSIM vs reference %.1e, PSNR vs reference %.1e, "
              "PSNR(mse=0.01)=%.17g",
              identical, ssim_err, psnr_err, p)};
}

std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 512> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  status = pclose(pipe);
  return out;
}

Outcome parameter_count_and_memory() {
  bool counts = true;
  int shapes = 0;
  for (int h : {1, 2, 5, 16, 31})
    for (int w : {1, 3, 8, 17})
      for (int n : {1, 3, 5, 11, 51}) {
        counts = counts && TransformParams::identity(h, w, n).scalar_count() ==
                               static_cast<std::size_t>(h) * w * (2 * n + 2);
        ++shapes;
      }
  int status = 0;
  const std::string out =
      run_capture(std::string(SDC_CLI_PATH) + " mem --width 1920 --height 1080 --n 11", status);
  const bool printed = status == 0 && out.find("199,065,600 bytes") != std::string::npos &&
                       out.find("174 MB") != std::string::npos;
  const double ratio = static_cast<double>(kernel_memory_estimate(1920, 1080, 51)) /
                       static_cast<double>(memory_estimate(1920, 1080, 11));
  return {counts && printed && ratio >= 100.0,
          fmt("%d shapes with H*W*(2N+2) scalars: %s; mem prints 199,065,600 bytes and the 174 MB "
              "figure: %s; kernel N=51 / sdc N=11 = %.1fx",
              shapes, counts ? "yes" : "no", printed ? "yes" : "no", ratio)};
}

std::pair<double, double> centroid(const Frame& f) {
  double mass = 0, sx = 0, sy = 0;
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) {
      const double v = f.at(y, x);
      mass += v;
      sx += v * x;
      sy += v * y;
    }
  return {sx / mass, sy / mass};
}

Outcome multi_step_stability() {
  SquareSceneConfig cfg;
  cfg.height = 24;
  cfg.width = 40;
  cfg.square_size = 8;
  cfg.speed = 1.0;
  cfg.start_x = 6;
  cfg.steps = 10;
  const SyntheticScene scene = make_translating_square(cfg);
  const int context = kDefaultContextFrames;
  const int steps = 5;
  SequenceInput input{{scene.frames.begin(), scene.frames.begin() + context}, {}};
  const std::vector<Frame> truth(scene.frames.begin() + context, scene.frames.end());

  PredictOptions options;
  options.method = Method::sdc;
  options.fit.record_metrics = false;
  const PredictionRun run = predict_multi(input, options, steps, std::nullopt, truth);

  double worst_centroid = 0.0;
  bool beats_copy = true;
  std::string trace;
  for (int k = 0; k < steps; ++k) {
    const auto [px, py] = centroid(run.predicted[k]);
    const auto [tx, ty] = centroid(truth[k]);
    const double err = std::hypot(px - tx, py - ty);
    worst_centroid = std::max(worst_centroid, err);
    const double l2_sdc = loss_l2(run.predicted[k], truth[k]);
    const double l2_copy = loss_l2(input.frames.back(), truth[k]);
    beats_copy = beats_copy && l2_sdc < l2_copy;
    trace += fmt(" [%d: centroid err %.3f, L2 %.2e vs copy %.2e]", k + 1, err, l2_sdc, l2_copy);
  }
  return {worst_centroid <= 0.5 && beats_copy,
          std::string("square 8px at 1px/step, 5 context frames, 5 recirculated steps:") + trace};
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  return std::string(std::istreambuf_iterator<char>(fa), {}) ==
         std::string(std::istreambuf_iterator<char>(fb), {});
}

// Every regular file under `a` has a byte-identical twin under `b`, and
// vice versa.
bool same_tree(const fs::path& a, const fs::path& b, int& files) {
  std::vector<fs::path> names_a, names_b;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) names_a.push_back(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) names_b.push_back(fs::relative(e.path(), b));
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  if (names_a != names_b || names_a.empty()) return false;
  for (const auto& n : names_a) {
    if (!same_bytes(a / n, b / n)) return false;
    ++files;
  }
  return true;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "sdc_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path config = root / "small.cfg";
  std::ofstream(config) << "schedule = paper\n"
                           "phase1.iterations = 30\n"
                           "phase2.iterations = 10\n"
                           "phase3.iterations = 20\n"
                           "phase4.iterations = 5\n"
                           "kernel_n = 7\n";
  const std::string cli = SDC_CLI_PATH;

  // Each run writes into its own directory; {D} is replaced by it.
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"synth", "synth --scene square --width 32 --height 16 --size 6 --speed 1 --steps 6 --out {D}/scene"},
      {"flow", "flow --prev {D}/scene/frame_004.png --next {D}/scene/frame_005.png --out {D}/f.flo"},
      {"fit", "fit --source {D}/scene/frame_004.png --target {D}/scene/frame_005.png --n 5 "
              "--schedule paper --out {D}/p.sdc --report {D}/report.csv --image {D}/fit.png"},
      {"predict", "predict --frames {D}/scene --method sdc --steps 2 --out {D}/pred"},
      {"predict --params", "predict --frames {D}/scene --method vector --params {D}/p.sdc --steps 2 "
                           "--out {D}/pred_fixed"},
      {"compare", "compare --frames {D}/scene --gt {D}/scene/frame_005.png --out {D}/cmp.csv"},
      {"mem", "mem --width 1920 --height 1080 --n 11"},
  };

  auto run_all = [&](const fs::path& dir, int threads) {
    fs::create_directories(dir);
    std::string log;
    for (const auto& [name, args] : commands) {
      std::string a = args;
      for (std::size_t pos; (pos = a.find("{D}")) != std::string::npos;) a.replace(pos, 3, dir.string());
      int status = 0;
      const std::string out = run_capture(cli + " --seed 7 --threads " + std::to_string(threads) +
                                              " --config " + config.string() + " " + a + " 2>&1",
                                          status);
      if (status != 0) return std::string("FAILED ") + name + ": " + out;
      log += out;
    }
    for (std::size_t pos; (pos = log.find(dir.string())) != std::string::npos;) {
      log.replace(pos, dir.string().size(), "{D}");
    }
    std::ofstream(dir / "stdout.txt", std::ios::binary) << log;
    return std::string();
  };

  const std::string e1 = run_all(root / "run1", 1);
  const std::string e2 = run_all(root / "run2", 1);
  const std::string e3 = run_all(root / "run3", 4);
  if (!e1.empty() || !e2.empty() || !e3.empty()) return {false, e1 + e2 + e3};
  int files_a = 0, files_b = 0;
  const bool repeat = same_tree(root / "run1", root / "run2", files_a);
  const bool threads = same_tree(root / "run1", root / "run3", files_b);
  return {repeat && threads,
          fmt("%zu commands with --seed 7: repeated run identical: %s (%d files); 1 vs 4 threads "
              "identical: %s (%d files)",
              commands.size(), repeat ? "yes" : "no", files_a, threads ? "yes" : "no", files_b)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"reduction identities", reduction_identities},
      {"non-composition witness", non_composition},
      {"gradient suite", gradient_suite},
      {"disocclusion figure reproduction", fig4_reproduction},
      {"fit convergence", fit_convergence},
      {"kernel-init convergence", kernel_init_convergence},
      {"metric oracles", metric_oracles},
      {"parameter count and memory", parameter_count_and_memory},
      {"multi-step stability", multi_step_stability},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " ("
              << criteria[i].first << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
