#pragma once

#include <vector>

#include "sdc/core/frame.hpp"
#include "sdc/loss/features.hpp"
#include "sdc/resample/params.hpp"

namespace sdc {

// Combination weights of the fine-tuning objective.
struct LossWeights {
  double l1 = 0.2;
  double perceptual = 0.06;
  double style = 36.0;
};

// Mean absolute / squared difference over all H*W*C elements.
double loss_l1(const Frame& pred, const Frame& target);
double loss_l2(const Frame& pred, const Frame& target);

// d loss / d pred. The L1 subgradient is 0 where pred == target.
Frame loss_l1_grad(const Frame& pred, const Frame& target);
Frame loss_l2_grad(const Frame& pred, const Frame& target);

// G[a][b] = sum over positions of F_a(p) * F_b(p); no spatial normalization.
std::vector<double> gram_matrix(const FeatureMap& features);

// sum_l kappa_l * |Psi_l(pred) - Psi_l(target)|_1, kappa_l = 1/(C_l H_l W_l)
double loss_perceptual(const Frame& pred, const Frame& target,
                       const FeatureExtractor& extractor);
// sum_l kappa_l * |G_l(pred) - G_l(target)|_1
double loss_style(const Frame& pred, const Frame& target, const FeatureExtractor& extractor);
// w_l * L1 + w_s * style + w_p * perceptual
double loss_finetune(const Frame& pred, const Frame& target,
                     const FeatureExtractor& extractor, const LossWeights& weights = {});

// sum over pixels of |ku - e_mid|^2 + |kv - e_mid|^2 (a sum, not a mean).
double loss_kernel_init(const SeparableKernelField& kernels);

struct KernelInitGrad {
  std::vector<double> d_ku;
  std::vector<double> d_kv;
};
KernelInitGrad loss_kernel_init_grad(const SeparableKernelField& kernels);

struct LossAndGrad {
  double value = 0.0;
  Frame grad;
};

// Fine-tuning objective against a fixed target; target features and Gram
// matrices are computed once. Zero weights skip their term entirely.
class FinetuneObjective {
 public:
  FinetuneObjective(Frame target, FeatureExtractor extractor, LossWeights weights = {});

  double value(const Frame& pred) const;
  LossAndGrad evaluate(const Frame& pred) const;

  const LossWeights& weights() const { return weights_; }

 private:
  bool uses_features() const { return weights_.perceptual != 0.0 || weights_.style != 0.0; }

  Frame target_;
  FeatureExtractor extractor_;
  LossWeights weights_;
  std::vector<FeatureMap> target_features_;
  std::vector<std::vector<double>> target_grams_;
};

}  // namespace sdc
