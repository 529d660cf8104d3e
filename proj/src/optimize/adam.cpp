#include "sdc/optimize/adam.hpp"

#include <cmath>
#include <string>

namespace sdc {

AdamState::AdamState(std::size_t size, const AdamConfig& cfg)
    : config(cfg), m(size, 0.0), v(size, 0.0) {
  if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0 && cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) {
    throw std::invalid_argument("Adam betas must lie in [0, 1)");
  }
  if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw std::invalid_argument("Adam learning rate must be finite and positive");
  }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw std::invalid_argument("adam_step: parameter, gradient and state sizes differ");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw NonFiniteGradient("non-finite gradient at parameter " + std::to_string(i), i);
    }
  }
  const auto& cfg = state.config;
  ++state.step;
  const double correction1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double correction2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = state.m[i] / correction1;
    const double v_hat = state.v[i] / correction2;
    params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

}  // namespace sdc
