#include "sdc/loss/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace sdc {
namespace {

double sign(double x) { return (x > 0.0) - (x < 0.0); }

double kappa(const FeatureMap& map) {
  return 1.0 / (static_cast<double>(map.channels) * map.height * map.width);
}

double perceptual_term(const std::vector<FeatureMap>& pred,
                       const std::vector<FeatureMap>& target) {
  double total = 0.0;
  for (std::size_t l = 0; l < pred.size(); ++l) {
    double sum = 0.0;
    for (std::size_t i = 0; i < pred[l].data.size(); ++i) {
      sum += std::abs(pred[l].data[i] - target[l].data[i]);
    }
    total += kappa(pred[l]) * sum;
  }
  return total;
}

double style_term(const std::vector<FeatureMap>& pred,
                  const std::vector<std::vector<double>>& target_grams,
                  std::vector<std::vector<double>>* pred_grams = nullptr) {
  double total = 0.0;
  for (std::size_t l = 0; l < pred.size(); ++l) {
    std::vector<double> gram = gram_matrix(pred[l]);
    double sum = 0.0;
    for (std::size_t i = 0; i < gram.size(); ++i) sum += std::abs(gram[i] - target_grams[l][i]);
    total += kappa(pred[l]) * sum;
    if (pred_grams) pred_grams->push_back(std::move(gram));
  }
  return total;
}

std::vector<std::vector<double>> grams_of(const std::vector<FeatureMap>& maps) {
  std::vector<std::vector<double>> grams;
  for (const auto& map : maps) grams.push_back(gram_matrix(map));
  return grams;
}

}  // namespace

double loss_l1(const Frame& pred, const Frame& target) {
  require_same_shape(pred, target, "loss_l1");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += std::abs(pred.data()[i] - target.data()[i]);
  return sum / static_cast<double>(pred.size());
}

double loss_l2(const Frame& pred, const Frame& target) {
  require_same_shape(pred, target, "loss_l2");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred.data()[i] - target.data()[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pred.size());
}

Frame loss_l1_grad(const Frame& pred, const Frame& target) {
  require_same_shape(pred, target, "loss_l1_grad");
  Frame grad(pred.height(), pred.width(), pred.channels());
  const double scale = 1.0 / static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    grad.data()[i] = scale * sign(pred.data()[i] - target.data()[i]);
  }
  return grad;
}

Frame loss_l2_grad(const Frame& pred, const Frame& target) {
  require_same_shape(pred, target, "loss_l2_grad");
  Frame grad(pred.height(), pred.width(), pred.channels());
  const double scale = 2.0 / static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    grad.data()[i] = scale * (pred.data()[i] - target.data()[i]);
  }
  return grad;
}

std::vector<double> gram_matrix(const FeatureMap& features) {
  const int c = features.channels;
  const std::size_t positions = features.plane();
  std::vector<double> gram(static_cast<std::size_t>(c) * c, 0.0);
  for (int a = 0; a < c; ++a) {
    const double* fa = features.data.data() + a * positions;
    for (int b = a; b < c; ++b) {
      const double* fb = features.data.data() + b * positions;
      double dot = 0.0;
      for (std::size_t p = 0; p < positions; ++p) dot += fa[p] * fb[p];
      gram[a * c + b] = dot;
      gram[b * c + a] = dot;
    }
  }
  return gram;
}

double loss_perceptual(const Frame& pred, const Frame& target,
                       const FeatureExtractor& extractor) {
  require_same_shape(pred, target, "loss_perceptual");
  return perceptual_term(extractor.extract(pred), extractor.extract(target));
}

double loss_style(const Frame& pred, const Frame& target, const FeatureExtractor& extractor) {
  require_same_shape(pred, target, "loss_style");
  return style_term(extractor.extract(pred), grams_of(extractor.extract(target)));
}

double loss_finetune(const Frame& pred, const Frame& target,
                     const FeatureExtractor& extractor, const LossWeights& weights) {
  return FinetuneObjective(target, extractor, weights).value(pred);
}

double loss_kernel_init(const SeparableKernelField& kernels) {
  const int n = kernels.n();
  const int mid = n / 2;
  double total = 0.0;
  for (const auto* data : {&kernels.ku_data(), &kernels.kv_data()}) {
    for (std::size_t i = 0; i < data->size(); ++i) {
      const double target = static_cast<int>(i % n) == mid ? 1.0 : 0.0;
      const double d = (*data)[i] - target;
      total += d * d;
    }
  }
  return total;
}

KernelInitGrad loss_kernel_init_grad(const SeparableKernelField& kernels) {
  const int n = kernels.n();
  const int mid = n / 2;
  KernelInitGrad grad{kernels.ku_data(), kernels.kv_data()};
  for (auto* data : {&grad.d_ku, &grad.d_kv}) {
    for (std::size_t i = 0; i < data->size(); ++i) {
      const double target = static_cast<int>(i % n) == mid ? 1.0 : 0.0;
      (*data)[i] = 2.0 * ((*data)[i] - target);
    }
  }
  return grad;
}

FinetuneObjective::FinetuneObjective(Frame target, FeatureExtractor extractor,
                                     LossWeights weights)
    : target_(std::move(target)), extractor_(std::move(extractor)), weights_(weights) {
  if (!(weights_.l1 >= 0.0 && weights_.perceptual >= 0.0 && weights_.style >= 0.0) ||
      !std::isfinite(weights_.l1 + weights_.perceptual + weights_.style)) {
    throw std::invalid_argument("loss weights must be finite and non-negative");
  }
  if (uses_features()) {
    target_features_ = extractor_.extract(target_);
    target_grams_ = grams_of(target_features_);
  }
}

double FinetuneObjective::value(const Frame& pred) const {
  require_same_shape(pred, target_, "loss_finetune");
  double total = weights_.l1 == 0.0 ? 0.0 : weights_.l1 * loss_l1(pred, target_);
  if (uses_features()) {
    const auto features = extractor_.extract(pred);
    if (weights_.style != 0.0) total += weights_.style * style_term(features, target_grams_);
    if (weights_.perceptual != 0.0) {
      total += weights_.perceptual * perceptual_term(features, target_features_);
    }
  }
  return total;
}

LossAndGrad FinetuneObjective::evaluate(const Frame& pred) const {
  require_same_shape(pred, target_, "loss_finetune");
  LossAndGrad result;
  result.grad = Frame(pred.height(), pred.width(), pred.channels());
  if (weights_.l1 != 0.0) {
    result.value = weights_.l1 * loss_l1(pred, target_);
    result.grad = loss_l1_grad(pred, target_);
    for (double& g : result.grad.data()) g *= weights_.l1;
  }
  if (!uses_features()) return result;

  const auto trace = extractor_.forward(pred);
  const auto& features = trace.outputs;
  std::vector<std::vector<double>> grams;
  const double style = style_term(features, target_grams_, &grams);
  const double perceptual = perceptual_term(features, target_features_);
  result.value += weights_.style * style + weights_.perceptual * perceptual;

  std::vector<FeatureMap> feature_grads;
  for (std::size_t l = 0; l < features.size(); ++l) {
    const FeatureMap& f = features[l];
    const double k = kappa(f);
    FeatureMap g(f.channels, f.height, f.width);
    if (weights_.perceptual != 0.0) {
      const double scale = weights_.perceptual * k;
      for (std::size_t i = 0; i < f.data.size(); ++i) {
        g.data[i] = scale * sign(f.data[i] - target_features_[l].data[i]);
      }
    }
    if (weights_.style != 0.0) {
      // d|G - T|_1 / dF_a(p) = sum_b (s_ab + s_ba) F_b(p), s = sign(G - T)
      const int c = f.channels;
      const std::size_t positions = f.plane();
      std::vector<double> s(static_cast<std::size_t>(c) * c);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = sign(grams[l][i] - target_grams_[l][i]);
      const double scale = weights_.style * k;
      for (int a = 0; a < c; ++a) {
        double* ga = g.data.data() + a * positions;
        for (int b = 0; b < c; ++b) {
          const double coeff = scale * (s[a * c + b] + s[b * c + a]);
          if (coeff == 0.0) continue;
          const double* fb = f.data.data() + b * positions;
          for (std::size_t p = 0; p < positions; ++p) ga[p] += coeff * fb[p];
        }
      }
    }
    feature_grads.push_back(std::move(g));
  }
  const Frame feature_part = extractor_.backward(trace, feature_grads, pred.channels());
  for (std::size_t i = 0; i < pred.size(); ++i) result.grad.data()[i] += feature_part.data()[i];
  return result;
}

}  // namespace sdc
