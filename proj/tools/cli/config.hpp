#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cprsim/agent.hpp"
#include "cprsim/errors.hpp"
#include "cprsim/model.hpp"
#include "cprsim/ode.hpp"
#include "cprsim/sweep.hpp"

namespace cprsim::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Every knob a subcommand can read, as one flat key=value document.
struct RunConfig {
  ModelParams params;
  bool allow_unnormalized = false;
  GrowthKind growth = GrowthKind::AlleeLogistic;
  StrategyRule rule = StrategyRule::Replicator;
  State initial{0.5, 0.5};

  IntegratorConfig integrator;
  SimConfig sim;  // sim.seed mirrors `seed`
  std::size_t n_runs = 50;
  std::uint64_t seed = 1;

  GridSpec grid;

  Axis region_allee{0.005, 0.4, 101, true};
  Axis region_defect{1.0, 3.0, 101, true};

  SweptParameter sweep = SweptParameter::DefectExtraction;
  Axis sweep_range{1.0, 3.0, 80, true};
  std::size_t n_ics = 50;
  std::string branch_rule = "same";  // "same" | "replicator" | "knowledge"

  std::string out;
  std::string raw_out;
  std::string boundary_out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parses `key=value` lines; '#' starts a comment. Unknown keys and malformed
// values throw ConfigError naming the key. Keys absent keep the values in
// `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});

// Applies one `key=value` assignment.
void apply_setting(RunConfig& config, std::string_view assignment);

// Effective configuration, one `key=value` per entry, in a fixed key order.
std::vector<std::string> echo_config(const RunConfig& config);

// Recovers a RunConfig from the `# cfg key=value` metadata lines of an output.
RunConfig parse_metadata(std::string_view text);

std::vector<std::string_view> config_keys();

StrategyRule resolve_branch_rule(const RunConfig& config);

}  // namespace cprsim::cli
