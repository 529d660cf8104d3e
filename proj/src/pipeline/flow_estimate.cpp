#include "sdc/pipeline/flow_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sdc/core/parallel.hpp"

namespace sdc {
namespace {

struct Plane {
  int height = 0;
  int width = 0;
  std::vector<double> data;

  double at_clamped(int y, int x) const {
    y = std::clamp(y, 0, height - 1);
    x = std::clamp(x, 0, width - 1);
    return data[static_cast<std::size_t>(y) * width + x];
  }
};

Plane luminance(const Frame& frame) {
  Plane p{frame.height(), frame.width(),
          std::vector<double>(static_cast<std::size_t>(frame.height()) * frame.width())};
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      double sum = 0.0;
      for (int c = 0; c < frame.channels(); ++c) sum += frame.at(y, x, c);
      p.data[static_cast<std::size_t>(y) * p.width + x] = sum / frame.channels();
    }
  }
  return p;
}

Plane downsample(const Plane& in) {
  Plane out{in.height / 2, in.width / 2, {}};
  out.data.resize(static_cast<std::size_t>(out.height) * out.width);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.data[static_cast<std::size_t>(y) * out.width + x] =
          0.25 * (in.at_clamped(2 * y, 2 * x) + in.at_clamped(2 * y, 2 * x + 1) +
                  in.at_clamped(2 * y + 1, 2 * x) + in.at_clamped(2 * y + 1, 2 * x + 1));
    }
  }
  return out;
}

// Doubles the field's resolution and magnitude; pixel centers align.
FlowField upsample(const FlowField& coarse, int height, int width) {
  FlowField fine(height, width);
  for (int y = 0; y < height; ++y) {
    const double cy = std::clamp((y + 0.5) / 2.0 - 0.5, 0.0, coarse.height() - 1.0);
    const int y0 = static_cast<int>(std::floor(cy));
    const int y1 = std::min(y0 + 1, coarse.height() - 1);
    const double fy = cy - y0;
    for (int x = 0; x < width; ++x) {
      const double cx = std::clamp((x + 0.5) / 2.0 - 0.5, 0.0, coarse.width() - 1.0);
      const int x0 = static_cast<int>(std::floor(cx));
      const int x1 = std::min(x0 + 1, coarse.width() - 1);
      const double fx = cx - x0;
      auto lerp = [&](auto get) {
        const double top = (1 - fx) * get(y0, x0) + fx * get(y0, x1);
        const double bottom = (1 - fx) * get(y1, x0) + fx * get(y1, x1);
        return 2.0 * ((1 - fy) * top + fy * bottom);
      };
      fine.u(y, x) = lerp([&](int yy, int xx) { return coarse.u(yy, xx); });
      fine.v(y, x) = lerp([&](int yy, int xx) { return coarse.v(yy, xx); });
    }
  }
  return fine;
}

// One level of block matching around the prior field's rounded block-centre vector.
FlowField match_blocks(const Plane& prev, const Plane& next, const FlowField& prior,
                       const FlowEstimatorConfig& config) {
  const int block = config.block;
  const int blocks_x = (next.width + block - 1) / block;
  const int blocks_y = (next.height + block - 1) / block;
  FlowField out(next.height, next.width);

  parallel_for(0, blocks_y, [&](int by) {
    const int y_lo = by * block;
    const int y_hi = std::min(next.height, y_lo + block);
    for (int bx = 0; bx < blocks_x; ++bx) {
      const int x_lo = bx * block;
      const int x_hi = std::min(next.width, x_lo + block);
      const int cy = (y_lo + y_hi - 1) / 2;
      const int cx = (x_lo + x_hi - 1) / 2;
      const int pu = static_cast<int>(std::lround(prior.u(cy, cx)));
      const int pv = static_cast<int>(std::lround(prior.v(cy, cx)));

      double best_cost = std::numeric_limits<double>::infinity();
      long best_norm = 0;
      int best_u = pu;
      int best_v = pv;
      for (int dv = pv - config.radius; dv <= pv + config.radius; ++dv) {
        for (int du = pu - config.radius; du <= pu + config.radius; ++du) {
          double cost = 0.0;
          for (int y = y_lo; y < y_hi; ++y) {
            for (int x = x_lo; x < x_hi; ++x) {
              cost += std::abs(next.data[static_cast<std::size_t>(y) * next.width + x] -
                               prev.at_clamped(y + dv, x + du));
            }
          }
          const long norm = static_cast<long>(du) * du + static_cast<long>(dv) * dv;
          if (cost < best_cost || (cost == best_cost && norm < best_norm)) {
            best_cost = cost;
            best_norm = norm;
            best_u = du;
            best_v = dv;
          }
        }
      }
      for (int y = y_lo; y < y_hi; ++y) {
        for (int x = x_lo; x < x_hi; ++x) {
          out.u(y, x) = best_u;
          out.v(y, x) = best_v;
        }
      }
    }
  });
  return out;
}

}  // namespace

FlowField estimate_flow(const Frame& prev, const Frame& next, const FlowEstimatorConfig& config) {
  require_same_shape(prev, next, "estimate_flow");
  if (config.levels < 1 || config.block < 1 || config.radius < 0) {
    throw std::invalid_argument("estimate_flow: invalid estimator configuration");
  }
  if (prev.height() < config.block || prev.width() < config.block) {
    throw std::invalid_argument("estimate_flow: image is smaller than one " +
                                std::to_string(config.block) + "x" +
                                std::to_string(config.block) + " block");
  }

  std::vector<Plane> prev_pyr{luminance(prev)};
  std::vector<Plane> next_pyr{luminance(next)};
  while (static_cast<int>(prev_pyr.size()) < config.levels &&
         prev_pyr.back().height / 2 >= config.block && prev_pyr.back().width / 2 >= config.block) {
    prev_pyr.push_back(downsample(prev_pyr.back()));
    next_pyr.push_back(downsample(next_pyr.back()));
  }

  FlowField field(prev_pyr.back().height, prev_pyr.back().width);
  for (std::size_t level = prev_pyr.size(); level-- > 0;) {
    const Plane& p = prev_pyr[level];
    if (field.height() != p.height || field.width() != p.width) {
      field = upsample(field, p.height, p.width);
    }
    field = match_blocks(p, next_pyr[level], field, config);
  }
  return field;
}

}  // namespace sdc
