#include "sdc/core/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdc {
namespace {

// Fraction of pixel column [x, x+1) covered by [left, left + size).
double coverage(int x, double left, int size) {
  const double lo = std::max<double>(x, left);
  const double hi = std::min<double>(x + 1, left + size);
  return std::max(0.0, hi - lo);
}

}  // namespace

SyntheticScene make_translating_square(const SquareSceneConfig& config) {
  const auto& c = config;
  if (c.height < 1 || c.width < 1 || c.square_size < 1 || c.steps < 1) {
    throw std::invalid_argument("square scene: sizes and step count must be positive");
  }
  if (!(c.speed >= 0.0) || !std::isfinite(c.speed)) {
    throw std::invalid_argument("square scene: speed must be finite and non-negative");
  }
  const double x0 = c.start_x < 0.0 ? c.speed : c.start_x;
  const double last_right = x0 + c.speed * (c.steps - 1) + c.square_size;
  if (last_right > c.width) {
    throw std::invalid_argument("square scene: square leaves the canvas");
  }

  const int top = std::max(0, (c.height - c.square_size) / 2);
  const int bottom = std::min(c.height, top + c.square_size);

  SyntheticScene scene;
  for (int t = 0; t < c.steps; ++t) {
    const double left = x0 + c.speed * t;
    Frame frame(c.height, c.width, 1, 0.0);
    for (int y = top; y < bottom; ++y) {
      for (int x = 0; x < c.width; ++x) frame.at(y, x) = coverage(x, left, c.square_size);
    }
    scene.frames.push_back(std::move(frame));

    if (t == 0) continue;
    const double prev_left = left - c.speed;
    FlowField flow(c.height, c.width);
    FlowField sampling(c.height, c.width);
    for (int y = top; y < bottom; ++y) {
      for (int x = 0; x < c.width; ++x) {
        const bool now = coverage(x, left, c.square_size) > 0.0;
        const bool before = coverage(x, prev_left, c.square_size) > 0.0;
        if (now) flow.u(y, x) = -c.speed;
        // Disoccluded pixels reuse the square's displacement, which lands
        // them on background to the left of the square's old position.
        if (now || before) sampling.u(y, x) = -c.speed;
      }
    }
    scene.gt_backward_flow.push_back(std::move(flow));
    scene.correct_sampling.push_back(std::move(sampling));
  }
  return scene;
}

}  // namespace sdc
