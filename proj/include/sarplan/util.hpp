#pragma once

#include <array>
#include <charconv>
#include <string>

namespace sarplan {

// Shortest decimal representation that round-trips exactly; used for every
// number written to text outputs so that files are byte-stable.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace sarplan
