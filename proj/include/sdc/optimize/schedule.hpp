#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sdc {

enum class Trainable { motion_only, kernels_only, all };
enum class PhaseLoss { l1, kernel_init, finetune };

struct FitPhase {
  Trainable trainable = Trainable::all;
  PhaseLoss loss = PhaseLoss::l1;
  double learning_rate = 1e-4;
  int iterations = 1;
};

struct FitSchedule {
  std::vector<FitPhase> phases;

  int total_iterations() const;
};

enum class ScheduleMode { quick, paper_shaped };

// Learning rates of the staged network training recipe: 1e-4 for the
// motion and kernel-initialization stages, 1e-5 for both joint stages.
inline constexpr double kStageOneLearningRate = 1e-4;
inline constexpr double kStageTwoLearningRate = 1e-5;

// Direct per-pixel fitting moves each parameter by about one learning rate
// per Adam step, so the network-training rates are multiplied by this
// factor (1e-4 -> 1e-2, 1e-5 -> 1e-3) to cover pixel-scale motion.
inline constexpr double kDirectFitLrScale = 100.0;

// paper_shaped: (motion, L1) -> (kernels, kernel-init) -> (all, L1) ->
// (all, finetune) with 1500 / 500 / 1000 / 500 iterations.
// quick: the first three phases with 400 / 100 / 300 iterations.
FitSchedule default_schedule(ScheduleMode mode, double lr_scale = kDirectFitLrScale);

// Throws std::invalid_argument on an empty schedule, a non-positive
// iteration count or a non-finite / non-positive learning rate.
void validate(const FitSchedule& schedule);

ScheduleMode parse_schedule_mode(std::string_view name);
std::string_view to_string(Trainable trainable);
std::string_view to_string(PhaseLoss loss);

}  // namespace sdc
