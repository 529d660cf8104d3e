#include "sdc/optimize/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace sdc {

int FitSchedule::total_iterations() const {
  int total = 0;
  for (const auto& phase : phases) total += phase.iterations;
  return total;
}

FitSchedule default_schedule(ScheduleMode mode, double lr_scale) {
  const double lr1 = kStageOneLearningRate * lr_scale;
  const double lr2 = kStageTwoLearningRate * lr_scale;
  FitSchedule schedule;
  if (mode == ScheduleMode::paper_shaped) {
    schedule.phases = {
        {Trainable::motion_only, PhaseLoss::l1, lr1, 1500},
        {Trainable::kernels_only, PhaseLoss::kernel_init, lr1, 500},
        {Trainable::all, PhaseLoss::l1, lr2, 1000},
        {Trainable::all, PhaseLoss::finetune, lr2, 500},
    };
  } else {
    schedule.phases = {
        {Trainable::motion_only, PhaseLoss::l1, lr1, 400},
        {Trainable::kernels_only, PhaseLoss::kernel_init, lr1, 100},
        {Trainable::all, PhaseLoss::l1, lr2, 300},
    };
  }
  return schedule;
}

void validate(const FitSchedule& schedule) {
  if (schedule.phases.empty()) throw std::invalid_argument("fit schedule has no phases");
  for (const auto& phase : schedule.phases) {
    if (phase.iterations < 1) {
      throw std::invalid_argument("every fit phase needs at least one iteration");
    }
    if (!(phase.learning_rate > 0.0) || !std::isfinite(phase.learning_rate)) {
      throw std::invalid_argument("fit phase learning rates must be finite and positive");
    }
  }
}

ScheduleMode parse_schedule_mode(std::string_view name) {
  if (name == "quick") return ScheduleMode::quick;
  if (name == "paper") return ScheduleMode::paper_shaped;
  throw std::invalid_argument("unknown schedule '" + std::string(name) +
                              "' (expected paper or quick)");
}

std::string_view to_string(Trainable trainable) {
  switch (trainable) {
    case Trainable::motion_only: return "motion";
    case Trainable::kernels_only: return "kernels";
    case Trainable::all: return "all";
  }
  return "?";
}

std::string_view to_string(PhaseLoss loss) {
  switch (loss) {
    case PhaseLoss::l1: return "l1";
    case PhaseLoss::kernel_init: return "kernel_init";
    case PhaseLoss::finetune: return "finetune";
  }
  return "?";
}

}  // namespace sdc
