#pragma once

#include <cstdint>
#include <string>

namespace cprsim::cli {

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
std::string format_bool(bool v);

}  // namespace cprsim::cli
