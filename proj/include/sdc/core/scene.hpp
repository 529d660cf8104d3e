#pragma once

#include <vector>

#include "sdc/core/fields.hpp"
#include "sdc/core/frame.hpp"

namespace sdc {

// A rendered sequence plus, for every step t >= 1 (stored at index t - 1),
// the ground-truth backward flow of frame t and the disocclusion-corrected
// sampling field that maps frame t - 1 onto frame t.
struct SyntheticScene {
  std::vector<Frame> frames;
  std::vector<FlowField> gt_backward_flow;
  std::vector<FlowField> correct_sampling;
};

struct SquareSceneConfig {
  int height = 1;
  int width = 6;
  int square_size = 2;
  double speed = 1.0;  // pixels per step, to the right
  int steps = 2;       // number of frames
  // Left edge at t = 0; negative means "use speed", which keeps the first
  // disoccluded strip's sampling positions inside the canvas.
  double start_x = -1.0;
};

// Single-channel frames: square = 1.0 on a 0.0 background. Non-integral
// speeds render the horizontal edges with area coverage. On canvases
// shorter than the square, the square is clipped vertically.
//
// Throws std::invalid_argument when the square leaves the canvas.
SyntheticScene make_translating_square(const SquareSceneConfig& config);

}  // namespace sdc
