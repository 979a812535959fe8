#include "format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cprsim::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

}  // namespace cprsim::cli
