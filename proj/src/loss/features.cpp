#include "sdc/loss/features.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "sdc/core/parallel.hpp"

namespace sdc {
namespace {

constexpr int kInputChannels = 3;

FeatureMap to_feature_map(const Frame& frame) {
  if (frame.channels() != 1 && frame.channels() != 3) {
    throw std::invalid_argument("feature extraction needs a 1- or 3-channel frame");
  }
  FeatureMap map(kInputChannels, frame.height(), frame.width());
  for (int c = 0; c < kInputChannels; ++c) {
    const int src = frame.channels() == 1 ? 0 : c;
    for (int y = 0; y < frame.height(); ++y) {
      for (int x = 0; x < frame.width(); ++x) map.at(c, y, x) = frame.at(y, x, src);
    }
  }
  return map;
}

// Rows of a rows x cols Gaussian matrix, orthonormalized with modified
// Gram-Schmidt. Needs rows <= cols.
std::vector<double> orthonormal_rows(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> m(static_cast<std::size_t>(rows) * cols);
  for (double& value : m) value = normal(rng);
  for (int i = 0; i < rows; ++i) {
    double* row = m.data() + static_cast<std::size_t>(i) * cols;
    for (int k = 0; k < i; ++k) {
      const double* prev = m.data() + static_cast<std::size_t>(k) * cols;
      double dot = 0.0;
      for (int j = 0; j < cols; ++j) dot += row[j] * prev[j];
      for (int j = 0; j < cols; ++j) row[j] -= dot * prev[j];
    }
    double norm = 0.0;
    for (int j = 0; j < cols; ++j) norm += row[j] * row[j];
    norm = std::sqrt(norm);
    for (int j = 0; j < cols; ++j) row[j] /= norm;
  }
  return m;
}

FeatureMap conv3x3_relu(const FeatureMap& in, const std::vector<double>& weights,
                        const std::vector<double>& biases, int out_channels) {
  FeatureMap out(out_channels, in.height, in.width);
  const int taps = in.channels * 9;
  parallel_for(0, out_channels, [&](int o) {
    const double* w = weights.data() + static_cast<std::size_t>(o) * taps;
    for (int y = 0; y < in.height; ++y) {
      for (int x = 0; x < in.width; ++x) {
        double acc = biases[o];
        for (int ci = 0; ci < in.channels; ++ci) {
          for (int ky = 0; ky < 3; ++ky) {
            const int ty = y + ky - 1;
            if (ty < 0 || ty >= in.height) continue;
            for (int kx = 0; kx < 3; ++kx) {
              const int tx = x + kx - 1;
              if (tx < 0 || tx >= in.width) continue;
              acc += w[ci * 9 + ky * 3 + kx] * in.at(ci, ty, tx);
            }
          }
        }
        out.at(o, y, x) = acc > 0.0 ? acc : 0.0;
      }
    }
  });
  return out;
}

FeatureMap average_pool(const FeatureMap& in, int factor) {
  if (factor == 1) return in;
  FeatureMap out(in.channels, in.height / factor, in.width / factor);
  const double scale = 1.0 / (factor * factor);
  for (int c = 0; c < in.channels; ++c) {
    for (int y = 0; y < out.height; ++y) {
      for (int x = 0; x < out.width; ++x) {
        double acc = 0.0;
        for (int dy = 0; dy < factor; ++dy) {
          for (int dx = 0; dx < factor; ++dx) {
            acc += in.at(c, y * factor + dy, x * factor + dx);
          }
        }
        out.at(c, y, x) = acc * scale;
      }
    }
  }
  return out;
}

}  // namespace

FeatureExtractor::FeatureExtractor(std::vector<FeatureLayerSpec> layers, std::uint64_t seed)
    : layers_(std::move(layers)), seed_(seed) {
  if (layers_.empty()) throw std::invalid_argument("feature extractor needs at least one level");
  std::mt19937_64 rng(seed);
  int channels = kInputChannels;
  for (auto& layer : layers_) {
    if (layer.pool < 1) throw std::invalid_argument("pooling factor must be >= 1");
    in_channels_.push_back(channels);
    if (layer.kind == FeatureLayerSpec::Kind::identity) {
      layer.out_channels = channels;
      weights_.emplace_back();
      biases_.emplace_back();
      continue;
    }
    if (layer.out_channels < 1 || layer.out_channels > channels * 9) {
      throw std::invalid_argument("conv level needs 1 <= out_channels <= 9 * in_channels");
    }
    weights_.push_back(orthonormal_rows(layer.out_channels, channels * 9, rng));
    biases_.emplace_back(layer.out_channels, 0.0);
    channels = layer.out_channels;
  }
}

FeatureExtractor FeatureExtractor::standard(std::uint64_t seed) {
  constexpr int channels[] = {16, 32, 64};
  return standard(channels, seed);
}

FeatureExtractor FeatureExtractor::standard(std::span<const int> channels, std::uint64_t seed) {
  std::vector<FeatureLayerSpec> layers;
  for (int c : channels) layers.push_back({FeatureLayerSpec::Kind::conv3x3_relu, c, 2});
  return FeatureExtractor(std::move(layers), seed);
}

FeatureExtractor FeatureExtractor::identity() {
  return FeatureExtractor({{FeatureLayerSpec::Kind::identity, 0, 1}}, 0);
}

int FeatureExtractor::total_downsampling() const {
  int factor = 1;
  for (const auto& layer : layers_) factor *= layer.pool;
  return factor;
}

void FeatureExtractor::set_biases(std::size_t level, std::vector<double> biases) {
  if (layers_.at(level).kind == FeatureLayerSpec::Kind::identity ||
      biases.size() != biases_[level].size()) {
    throw std::invalid_argument("bias vector does not fit this level");
  }
  biases_[level] = std::move(biases);
}

FeatureExtractor::Trace FeatureExtractor::forward(const Frame& frame) const {
  const int factor = total_downsampling();
  if (frame.height() < factor || frame.width() < factor) {
    throw std::invalid_argument("frame " + std::to_string(frame.height()) + "x" +
                                std::to_string(frame.width()) +
                                " is smaller than the extractor's downsampling factor " +
                                std::to_string(factor));
  }
  Trace trace;
  FeatureMap current = to_feature_map(frame);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    trace.inputs.push_back(current);
    FeatureMap act = layer.kind == FeatureLayerSpec::Kind::identity
                         ? current
                         : conv3x3_relu(current, weights_[l], biases_[l], layer.out_channels);
    current = average_pool(act, layer.pool);
    trace.activations.push_back(std::move(act));
    trace.outputs.push_back(current);
  }
  return trace;
}

std::vector<FeatureMap> FeatureExtractor::extract(const Frame& frame) const {
  return forward(frame).outputs;
}

Frame FeatureExtractor::backward(const Trace& trace, std::span<const FeatureMap> output_grads,
                                 int frame_channels) const {
  if (output_grads.size() != layers_.size()) {
    throw std::invalid_argument("need one gradient map per extractor level");
  }
  FeatureMap upstream;  // gradient w.r.t. the next level's input
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const auto& layer = layers_[l];
    const FeatureMap& act = trace.activations[l];
    FeatureMap grad_out = output_grads[l];
    if (!upstream.data.empty()) {
      for (std::size_t i = 0; i < grad_out.data.size(); ++i) grad_out.data[i] += upstream.data[i];
    }

    // un-pool
    FeatureMap grad_act(act.channels, act.height, act.width);
    const double scale = 1.0 / (layer.pool * layer.pool);
    for (int c = 0; c < act.channels; ++c) {
      for (int y = 0; y < grad_out.height * layer.pool; ++y) {
        for (int x = 0; x < grad_out.width * layer.pool; ++x) {
          grad_act.at(c, y, x) = grad_out.at(c, y / layer.pool, x / layer.pool) * scale;
        }
      }
    }

    if (layer.kind == FeatureLayerSpec::Kind::identity) {
      upstream = std::move(grad_act);
      continue;
    }

    for (std::size_t i = 0; i < grad_act.data.size(); ++i) {
      if (act.data[i] <= 0.0) grad_act.data[i] = 0.0;
    }
    const FeatureMap& in = trace.inputs[l];
    const std::vector<double>& w = weights_[l];
    const int taps = in.channels * 9;
    FeatureMap grad_in(in.channels, in.height, in.width);
    parallel_for(0, in.channels, [&](int ci) {
      for (int o = 0; o < act.channels; ++o) {
        const double* wo = w.data() + static_cast<std::size_t>(o) * taps + ci * 9;
        for (int y = 0; y < act.height; ++y) {
          for (int x = 0; x < act.width; ++x) {
            const double g = grad_act.at(o, y, x);
            if (g == 0.0) continue;
            for (int ky = 0; ky < 3; ++ky) {
              const int ty = y + ky - 1;
              if (ty < 0 || ty >= in.height) continue;
              for (int kx = 0; kx < 3; ++kx) {
                const int tx = x + kx - 1;
                if (tx < 0 || tx >= in.width) continue;
                grad_in.at(ci, ty, tx) += wo[ky * 3 + kx] * g;
              }
            }
          }
        }
      }
    });
    upstream = std::move(grad_in);
  }

  Frame out(upstream.height, upstream.width, frame_channels);
  for (int y = 0; y < upstream.height; ++y) {
    for (int x = 0; x < upstream.width; ++x) {
      if (frame_channels == 1) {
        out.at(y, x) = upstream.at(0, y, x) + upstream.at(1, y, x) + upstream.at(2, y, x);
      } else {
        for (int c = 0; c < frame_channels; ++c) out.at(y, x, c) = upstream.at(c, y, x);
      }
    }
  }
  return out;
}

std::vector<FeatureMap> extract_features(const Frame& frame, const FeatureExtractor& extractor) {
  return extractor.extract(frame);
}

}  // namespace sdc
