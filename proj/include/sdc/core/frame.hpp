#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sdc {

// Dense H x W x C image, row-major with channels innermost. Values are
// nominally in [0,1]; operators never clamp, only save_frame does.
class Frame {
 public:
  Frame() = default;
  Frame(int height, int width, int channels, double fill = 0.0);
  Frame(int height, int width, int channels, std::vector<double> data);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int y, int x, int c = 0) {
    return data_[index(y, x, c)];
  }
  double at(int y, int x, int c = 0) const {
    return data_[index(y, x, c)];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const Frame& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  bool operator==(const Frame&) const = default;

 private:
  std::size_t index(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// Throws std::invalid_argument naming `what` if the shapes differ.
void require_same_shape(const Frame& a, const Frame& b, const char* what);

}  // namespace sdc
