#pragma once

#include <cstddef>
#include <vector>

#include "sdc/core/frame.hpp"

namespace sdc {

// Per-pixel (u, v) displacement in pixels, backward convention: the output
// at (x, y) samples the source at (x + u, y + v).
//
// The tag separates optical flow (an input signal) from learned motion (a
// transformation parameter); converting between them is explicit.
template <class Tag>
class DisplacementField {
 public:
  DisplacementField() = default;
  DisplacementField(int height, int width)
      : height_(height),
        width_(width),
        u_(static_cast<std::size_t>(height) * width, 0.0),
        v_(static_cast<std::size_t>(height) * width, 0.0) {}
  DisplacementField(int height, int width, std::vector<double> u,
                    std::vector<double> v);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t pixel_count() const { return u_.size(); }

  double& u(int y, int x) { return u_[index(y, x)]; }
  double& v(int y, int x) { return v_[index(y, x)]; }
  double u(int y, int x) const { return u_[index(y, x)]; }
  double v(int y, int x) const { return v_[index(y, x)]; }

  std::vector<double>& u_data() { return u_; }
  std::vector<double>& v_data() { return v_; }
  const std::vector<double>& u_data() const { return u_; }
  const std::vector<double>& v_data() const { return v_; }

  bool operator==(const DisplacementField&) const = default;

 private:
  std::size_t index(int y, int x) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<double> u_;
  std::vector<double> v_;
};

struct FlowTag;
struct MotionTag;

using FlowField = DisplacementField<FlowTag>;
using MotionField = DisplacementField<MotionTag>;

MotionField to_motion(const FlowField& flow);
FlowField to_flow(const MotionField& motion);

// Views a field as a 2-channel frame (u, v) so frame losses apply to it.
Frame as_frame(const FlowField& flow);

}  // namespace sdc
