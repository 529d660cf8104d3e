#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sdc/core/frame.hpp"

namespace sdc {

// Channel-major C x H x W activations of one extractor level.
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  FeatureMap() = default;
  FeatureMap(int c, int h, int w, double fill = 0.0)
      : channels(c), height(h), width(w),
        data(static_cast<std::size_t>(c) * h * w, fill) {}

  std::size_t plane() const { return static_cast<std::size_t>(height) * width; }
  double& at(int c, int y, int x) { return data[c * plane() + y * width + x]; }
  double at(int c, int y, int x) const { return data[c * plane() + y * width + x]; }
};

struct FeatureLayerSpec {
  enum class Kind { conv3x3_relu, identity };
  Kind kind = Kind::conv3x3_relu;
  int out_channels = 16;
  int pool = 2;  // average-pool factor after the nonlinearity; 1 = none
};

inline constexpr std::uint64_t kDefaultExtractorSeed = 0x5DC2018;

// Fixed, deterministic stand-in for a pretrained perceptual network: a stack
// of 3x3 zero-padded convolutions with orthonormal filter banks, ReLU and
// average pooling. Each level's output is one feature map. Inputs with one
// channel are replicated to three.
class FeatureExtractor {
 public:
  FeatureExtractor(std::vector<FeatureLayerSpec> layers, std::uint64_t seed);

  // Three conv levels, 16/32/64 channels, stride-2 pooling.
  static FeatureExtractor standard(std::uint64_t seed = kDefaultExtractorSeed);
  static FeatureExtractor standard(std::span<const int> channels, std::uint64_t seed);
  // One level that returns its input unchanged.
  static FeatureExtractor identity();

  std::size_t level_count() const { return layers_.size(); }
  const std::vector<FeatureLayerSpec>& layers() const { return layers_; }
  std::uint64_t seed() const { return seed_; }

  // Product of the pooling factors; frames must be at least this large.
  int total_downsampling() const;

  // Intermediate state needed to backpropagate through the stack.
  struct Trace {
    std::vector<FeatureMap> inputs;       // input to each level
    std::vector<FeatureMap> activations;  // post-nonlinearity, pre-pool
    std::vector<FeatureMap> outputs;      // what extract() returns
  };

  std::vector<FeatureMap> extract(const Frame& frame) const;
  Trace forward(const Frame& frame) const;

  // Gradient with respect to the input frame, given gradients with respect
  // to every level's output. The result has the frame's channel count.
  Frame backward(const Trace& trace, std::span<const FeatureMap> output_grads,
                 int frame_channels) const;

  // Filter bank of a conv level: out_channels x (in_channels * 9).
  const std::vector<double>& weights(std::size_t level) const { return weights_[level]; }
  const std::vector<double>& biases(std::size_t level) const { return biases_[level]; }
  void set_biases(std::size_t level, std::vector<double> biases);

 private:
  std::vector<FeatureLayerSpec> layers_;
  std::uint64_t seed_;
  std::vector<int> in_channels_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> biases_;
};

std::vector<FeatureMap> extract_features(const Frame& frame, const FeatureExtractor& extractor);

}  // namespace sdc
