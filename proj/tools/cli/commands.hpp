#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace cprsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct Options {
  unsigned threads = 1;
  bool quiet = false;
};

// Each command writes its full document (metadata comments first) to `out`.
void cmd_simulate(const RunConfig& config, const Options& opts, std::ostream& out);
void cmd_ensemble(const RunConfig& config, const Options& opts, std::ostream& out);
void cmd_fixed_points(const RunConfig& config, const Options& opts, std::ostream& out);
void cmd_basin(const RunConfig& config, const Options& opts, std::ostream& out);
void cmd_region(const RunConfig& config, const Options& opts, std::ostream& out);
void cmd_compare_regions(const RunConfig& config, const Options& opts, std::ostream& out);
void cmd_bifurcation(const RunConfig& config, const Options& opts, std::ostream& out);

// Full command line (args[0] is the program name). Returns the exit code;
// documents go to `out` unless --out names a file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cprsim::cli
