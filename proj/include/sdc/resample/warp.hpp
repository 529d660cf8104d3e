#pragma once

#include "sdc/core/frame.hpp"
#include "sdc/resample/params.hpp"

namespace sdc {

// Bilinear value of channel c at subpixel (x, y), with the coordinates
// first clamped to [0, W-1] x [0, H-1].
double bilinear_sample(const Frame& frame, double x, double y, int c);

// Vector-based resampling: out(x,y) = bilinear(frame, x+u, y+v).
Frame warp_vector(const Frame& frame, const MotionField& motion);

// weights(y,x)[i*N + j] = kv[i] * ku[j].
KernelField2D expand_separable(const SeparableKernelField& kernels);

// Kernel-based resampling: out(x,y) = sum_ij w[i][j] * frame(x-r+j, y-r+i)
// with r = N/2 and edge-clamped taps. No kernel flip.
Frame warp_kernel(const Frame& frame, const KernelField2D& kernels);

// Spatially-displaced convolution:
//   out(x,y) = sum_ij kv[i] ku[j] * bilinear(frame, x+u-r+j, y+v-r+i)
// Every tap is a bilinear sample of the source frame itself.
Frame warp_sdc(const Frame& frame, const TransformParams& params);

// Gradient of sum(output_grad * warp_sdc(frame, params)) with respect to
// u, v, ku and kv. The sampler's derivative at integer coordinates is the
// right-hand one.
TransformGradients sdc_backward(const Frame& frame, const TransformParams& params,
                                const Frame& output_grad);

}  // namespace sdc
