#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "sdc/core/io.hpp"
#include "sdc/resample/params.hpp"
#include "sdc/resample/warp.hpp"

namespace fs = std::filesystem;
using namespace sdc;

namespace {

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

}  // namespace

TEST_CASE("warp_vector matches the bilinear reference") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Frame f = oracle::random_frame(rng, 1 + trial % 7, 2 + trial % 5, 1 + trial % 3);
    const TransformParams p = random_params(rng, f.height(), f.width(), 1, 4.0);
    CHECK(oracle::max_abs_diff(warp_vector(f, p.motion), oracle::warp_vector(f, p.motion)) <
          1e-12);
  }
}

TEST_CASE("integer motion is an exact edge-clamped shift") {
  Frame f(1, 5, 1, std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5});
  MotionField m(1, 5);
  for (double& u : m.u_data()) u = 2.0;
  const Frame out = warp_vector(f, m);
  CHECK(out.at(0, 0) == 0.3);
  CHECK(out.at(0, 2) == 0.5);
  CHECK(out.at(0, 4) == 0.5);
}

TEST_CASE("warp_sdc matches the per-tap definition, including far outside the frame") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + 2 * (trial % 4);
    const Frame f = oracle::random_frame(rng, 1 + trial % 6, 1 + (trial * 7) % 9, 1 + trial % 3);
    const TransformParams p =
        random_params(rng, f.height(), f.width(), n, trial % 5 == 0 ? 40.0 : 3.0);
    CHECK(oracle::max_abs_diff(warp_sdc(f, p), oracle::warp_sdc_per_tap(f, p)) < 1e-12);
  }
}

TEST_CASE("warp_kernel matches the dense reference and separable expansion") {
  std::mt19937_64 rng(13);
  for (int n : {1, 3, 5}) {
    const Frame f = oracle::random_frame(rng, 6, 7, 2);
    const TransformParams p = random_params(rng, 6, 7, n, 0.0);
    const Frame fast = warp_kernel(f, expand_separable(p.kernels));
    CHECK(oracle::max_abs_diff(fast, oracle::warp_kernel_dense(f, p.kernels)) < 1e-12);
  }
}

TEST_CASE("kernel application is cross-correlation, not convolution") {
  Frame f(1, 3, 1, std::vector<double>{1.0, 2.0, 4.0});
  KernelField2D k(1, 3, 3);
  // Row offset 1 (centre row), column offset 2 (right neighbour).
  k.weights(0, 1)[1 * 3 + 2] = 1.0;
  CHECK(warp_kernel(f, k).at(0, 1) == 4.0);
}

TEST_CASE("SDC reduces to vector and kernel resampling") {
  std::mt19937_64 rng(14);
  for (int n : {1, 3, 5, 11}) {
    const Frame f = oracle::random_frame(rng, 9, 8, 3);
    TransformParams p = random_params(rng, 9, 8, n, 3.0);
    TransformParams one_hot{p.motion, SeparableKernelField::middle_one_hot(9, 8, n)};
    CHECK(oracle::max_abs_diff(warp_sdc(f, one_hot), warp_vector(f, p.motion)) <= 1e-12);
    TransformParams still{MotionField(9, 8), p.kernels};
    CHECK(oracle::max_abs_diff(warp_sdc(f, still), warp_kernel(f, expand_separable(p.kernels))) <=
          1e-12);
  }
}

TEST_CASE("SDC differs from kernel-after-vector resampling") {
  SUBCASE("constant half-pixel motion with a box kernel shows the gap at the border") {
    const int w = 8;
    Frame f(1, w, 1);
    for (int x = 0; x < w; ++x) f.at(0, x) = static_cast<double>(x) / (w - 1);
    TransformParams p = TransformParams::identity(1, w, 3);
    for (double& u : p.motion.u_data()) u = 0.5;
    for (int x = 0; x < w; ++x) {
      for (int j = 0; j < 3; ++j) p.kernels.ku(0, x)[j] = 1.0 / 3.0;
    }
    const Frame sdc_out = warp_sdc(f, p);
    const Frame composed = warp_kernel(warp_vector(f, p.motion), expand_separable(p.kernels));
    // Left border: the SDC tap at -0.5 clamps to pixel 0 while the composed
    // path reuses the already shifted value at 0.5.
    const double slope = 1.0 / (w - 1);
    CHECK(std::abs(sdc_out.at(0, 0) - composed.at(0, 0)) == doctest::Approx(slope / 6.0));
    for (int x = 1; x < w; ++x) CHECK(std::abs(sdc_out.at(0, x) - composed.at(0, x)) < 1e-12);
  }
  SUBCASE("varying motion differs in the interior") {
    std::mt19937_64 rng(15);
    const Frame f = oracle::random_frame(rng, 8, 8, 1);
    TransformParams p = random_params(rng, 8, 8, 3, 1.5);
    const Frame sdc_out = warp_sdc(f, p);
    const Frame composed = warp_kernel(warp_vector(f, p.motion), expand_separable(p.kernels));
    CHECK(std::abs(sdc_out.at(4, 4) - composed.at(4, 4)) > 1e-3);
  }
}

TEST_CASE("operators reject mismatched shapes and even kernels") {
  const Frame f(4, 4, 1);
  CHECK_THROWS_AS(warp_vector(f, MotionField(3, 4)), std::invalid_argument);
  CHECK_THROWS_AS(warp_kernel(f, KernelField2D(4, 4, 2)), std::invalid_argument);
  CHECK_THROWS_AS(SeparableKernelField(4, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(warp_sdc(f, TransformParams::identity(4, 5, 3)), std::invalid_argument);
}

TEST_CASE("parameter count is 2N+2 per pixel") {
  for (int h : {1, 3, 7})
    for (int w : {1, 4, 9})
      for (int n : {1, 3, 11}) {
        CHECK(TransformParams::identity(h, w, n).scalar_count() ==
              static_cast<std::size_t>(h * w * (2 * n + 2)));
      }
}

TEST_CASE("parameter files round trip float32 values") {
  std::mt19937_64 rng(16);
  TransformParams p = random_params(rng, 3, 4, 5, 2.0);
  auto to_f32 = [](std::vector<double>& xs) {
    for (double& x : xs) x = static_cast<float>(x);
  };
  to_f32(p.motion.u_data());
  to_f32(p.motion.v_data());
  to_f32(p.kernels.ku_data());
  to_f32(p.kernels.kv_data());
  const fs::path path = fs::temp_directory_path() / "sdc_unit_params.sdc";
  write_params(p, path);
  CHECK(read_params(path) == p);
  CHECK(fs::file_size(path) == 4 + 4 * 4 + 4 * p.scalar_count());

  std::ofstream(path, std::ios::binary) << "NOPE0000000000000000";
  CHECK_THROWS_AS(read_params(path), IoError);
}

TEST_CASE("sdc_backward matches finite differences") {
  std::mt19937_64 rng(17);
  const double h = 1e-6;
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + 2 * (trial % 3);
    const Frame f = oracle::random_frame(rng, 4, 5, 1 + trial % 2);
    TransformParams p = random_params(rng, 4, 5, n, 2.5);
    const Frame g = oracle::random_frame(rng, 4, 5, f.channels());
    const TransformGradients grads = sdc_backward(f, p, g);
    auto loss = [&] { return oracle::contract(g, oracle::warp_sdc_per_tap(f, p)); };

    for (std::size_t i = 0; i < p.motion.pixel_count(); ++i) {
      const int x = static_cast<int>(i) % 5;
      const int y = static_cast<int>(i) / 5;
      const auto su = oracle::side_for_coordinate(x + p.motion.u_data()[i], h);
      const auto sv = oracle::side_for_coordinate(y + p.motion.v_data()[i], h);
      CHECK(oracle::grad_close(grads.d_u[i],
                               oracle::numeric_derivative(loss, p.motion.u_data()[i], h, su)));
      CHECK(oracle::grad_close(grads.d_v[i],
                               oracle::numeric_derivative(loss, p.motion.v_data()[i], h, sv)));
    }
    for (std::size_t i = 0; i < p.kernels.ku_data().size(); ++i) {
      CHECK(oracle::grad_close(grads.d_ku[i],
                               oracle::numeric_derivative(loss, p.kernels.ku_data()[i], h)));
      CHECK(oracle::grad_close(grads.d_kv[i],
                               oracle::numeric_derivative(loss, p.kernels.kv_data()[i], h)));
    }
  }
}

TEST_CASE("sdc_backward uses the right-hand derivative at integer coordinates") {
  Frame f(1, 4, 1, std::vector<double>{0.0, 1.0, 3.0, 6.0});
  TransformParams p = TransformParams::identity(1, 4, 1);
  p.motion.u(0, 1) = 1.0;  // samples exactly at x = 2
  Frame g(1, 4, 1);
  g.at(0, 1) = 1.0;
  CHECK(sdc_backward(f, p, g).d_u[1] == doctest::Approx(3.0));  // 6 - 3, not 3 - 1
}
