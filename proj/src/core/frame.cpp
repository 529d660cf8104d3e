#include "sdc/core/frame.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sdc/core/fields.hpp"

namespace sdc {
namespace {

void check_dims(int height, int width, int channels) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("frame dimensions must be at least 1x1");
  }
  if (channels < 1) {
    throw std::invalid_argument("frame needs at least one channel");
  }
}

void check_finite(const std::vector<double>& values, const char* what) {
  for (double value : values) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument(std::string(what) + " contains non-finite values");
    }
  }
}

}  // namespace

Frame::Frame(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
  check_dims(height, width, channels);
  data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

Frame::Frame(int height, int width, int channels, std::vector<double> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  check_dims(height, width, channels);
  if (data_.size() != static_cast<std::size_t>(height) * width * channels) {
    throw std::invalid_argument("frame data length does not match H*W*C");
  }
  check_finite(data_, "frame");
}

void require_same_shape(const Frame& a, const Frame& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(
        std::string(what) + ": frame dimensions differ (" +
        std::to_string(a.height()) + "x" + std::to_string(a.width()) + "x" +
        std::to_string(a.channels()) + " vs " + std::to_string(b.height()) +
        "x" + std::to_string(b.width()) + "x" + std::to_string(b.channels()) + ")");
  }
}

template <class Tag>
DisplacementField<Tag>::DisplacementField(int height, int width,
                                          std::vector<double> u,
                                          std::vector<double> v)
    : height_(height), width_(width), u_(std::move(u)), v_(std::move(v)) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("field dimensions must be at least 1x1");
  }
  const auto n = static_cast<std::size_t>(height) * width;
  if (u_.size() != n || v_.size() != n) {
    throw std::invalid_argument("field arrays must each hold H*W values");
  }
  check_finite(u_, "field u");
  check_finite(v_, "field v");
}

template class DisplacementField<FlowTag>;
template class DisplacementField<MotionTag>;

MotionField to_motion(const FlowField& flow) {
  return MotionField(flow.height(), flow.width(), flow.u_data(), flow.v_data());
}

FlowField to_flow(const MotionField& motion) {
  return FlowField(motion.height(), motion.width(), motion.u_data(), motion.v_data());
}

Frame as_frame(const FlowField& flow) {
  std::vector<double> data(flow.pixel_count() * 2);
  for (std::size_t i = 0; i < flow.pixel_count(); ++i) {
    data[2 * i] = flow.u_data()[i];
    data[2 * i + 1] = flow.v_data()[i];
  }
  return Frame(flow.height(), flow.width(), 2, std::move(data));
}

}  // namespace sdc
