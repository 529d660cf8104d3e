#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sdc {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> m;
  std::vector<double> v;
  long step = 0;

  AdamState() = default;
  AdamState(std::size_t size, const AdamConfig& cfg);
};

class NonFiniteGradient : public std::runtime_error {
 public:
  NonFiniteGradient(const std::string& message, std::size_t index)
      : std::runtime_error(message), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// One bias-corrected Adam update, no weight decay. Throws
// NonFiniteGradient (leaving params and state untouched) if any gradient
// is NaN or infinite.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

}  // namespace sdc
