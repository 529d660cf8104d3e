#pragma once

#include "sdc/core/fields.hpp"
#include "sdc/core/frame.hpp"

namespace sdc {

struct FlowEstimatorConfig {
  int levels = 3;  // pyramid levels, 2x average downsampling between them
  int block = 8;   // square block size in pixels at every level
  int radius = 4;  // exhaustive search half-width per level
};

// Coarse-to-fine block matching. Returns backward flow: for each pixel of
// `next`, the displacement to where its content sits in `prev`, so that
// warp_vector(prev, flow) approximates next.
//
// Every pixel of a block receives the block's integer vector; fields are
// carried between pyramid levels by bilinear upsampling. Levels whose
// image would be smaller than one block are dropped. Block cost is the L1
// difference of the channel-averaged images with edge clamping; ties go to
// the shortest vector.
FlowField estimate_flow(const Frame& prev, const Frame& next,
                        const FlowEstimatorConfig& config = {});

}  // namespace sdc
