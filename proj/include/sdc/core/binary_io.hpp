#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <type_traits>

#include "sdc/core/io.hpp"

namespace sdc::binary {

// Little-endian scalar I/O for 4-byte types. Errors surface as IoError.

template <class T>
void write_le(std::ostream& out, T value) {
  static_assert(sizeof(T) == 4 && std::is_trivially_copyable_v<T>);
  std::array<char, 4> bytes;
  std::memcpy(bytes.data(), &value, 4);
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(bytes.data(), 4);
}

template <class T>
T read_le(std::istream& in, const char* what) {
  static_assert(sizeof(T) == 4 && std::is_trivially_copyable_v<T>);
  std::array<char, 4> bytes;
  if (!in.read(bytes.data(), 4)) {
    throw IoError(std::string("truncated ") + what);
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), 4);
  return value;
}

}  // namespace sdc::binary
