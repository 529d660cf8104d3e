#pragma once

#include <cstdint>
#include <string>

namespace sdc {

// Bytes needed to hold one frame's SDC parameters: 2N+2 values per pixel.
// Throws std::invalid_argument for non-positive sizes or even N.
std::uint64_t memory_estimate(int width, int height, int n, int bytes_per_element = 4);

// N*N values per pixel.
std::uint64_t kernel_memory_estimate(int width, int height, int n, int bytes_per_element = 4);

// Two values per pixel.
std::uint64_t vector_memory_estimate(int width, int height, int bytes_per_element = 4);

// Published inference footprint at 1920x1080 with N=11.
inline constexpr double kPublishedFootprintMB = 174.0;

// Human-readable comparison of the three operators' parameter footprints.
std::string memory_report(int width, int height, int n, int bytes_per_element = 4,
                          int kernel_n = 51);

// 199065600 -> "199,065,600".
std::string with_thousands(std::uint64_t value);

}  // namespace sdc
