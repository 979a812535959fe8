#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "format.hpp"

namespace cprsim::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ConfigError("invalid value '" + std::string(value) + "' for config key '" +
                    std::string(key) + "': expected " + std::string(want));
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out))
    bad_value(key, v, "a finite number");
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    bad_value(key, v, "a non-negative integer");
  return out;
}

std::size_t to_size(std::string_view key, std::string_view v) {
  return static_cast<std::size_t>(to_u64(key, v));
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v, "true or false");
}

GrowthKind to_growth(std::string_view key, std::string_view v) {
  if (v == "allee") return GrowthKind::AlleeLogistic;
  if (v == "logistic") return GrowthKind::PlainLogistic;
  bad_value(key, v, "allee or logistic");
}

StrategyRule to_rule(std::string_view key, std::string_view v) {
  if (v == "replicator") return StrategyRule::Replicator;
  if (v == "knowledge") return StrategyRule::KnowledgeFeedback;
  bad_value(key, v, "replicator or knowledge");
}

SweptParameter to_swept(std::string_view key, std::string_view v) {
  if (v == "e_D_hat") return SweptParameter::DefectExtraction;
  if (v == "A") return SweptParameter::Allee;
  bad_value(key, v, "e_D_hat or A");
}

std::string fd(double v) { return format_double(v); }
std::string fu(std::uint64_t v) { return std::to_string(v); }

struct Key {
  std::string_view name;
  void (*set)(RunConfig&, std::string_view key, std::string_view value);
  std::string (*get)(const RunConfig&);
};

#define CPRSIM_KEY(NAME, SETTER, GETTER)                                             \
  Key {                                                                              \
    NAME, [](RunConfig& c, std::string_view k, std::string_view v) { SETTER; },      \
        [](const RunConfig& c) -> std::string { return GETTER; }                     \
  }

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = {
      CPRSIM_KEY("T", c.params.growth_rate = to_double(k, v), fd(c.params.growth_rate)),
      CPRSIM_KEY("A", c.params.allee_threshold = to_double(k, v), fd(c.params.allee_threshold)),
      CPRSIM_KEY("K", c.params.carrying_capacity = to_double(k, v), fd(c.params.carrying_capacity)),
      CPRSIM_KEY("e_C_hat", c.params.coop_extraction = to_double(k, v), fd(c.params.coop_extraction)),
      CPRSIM_KEY("e_D_hat", c.params.defect_extraction = to_double(k, v), fd(c.params.defect_extraction)),
      CPRSIM_KEY("w", c.params.greed = to_double(k, v), fd(c.params.greed)),
      CPRSIM_KEY("allow_unnormalized", c.allow_unnormalized = to_bool(k, v), format_bool(c.allow_unnormalized)),
      CPRSIM_KEY("growth", c.growth = to_growth(k, v), std::string(to_string(c.growth))),
      CPRSIM_KEY("rule", c.rule = to_rule(k, v), std::string(to_string(c.rule))),
      CPRSIM_KEY("R0", c.initial.resource = to_double(k, v), fd(c.initial.resource)),
      CPRSIM_KEY("x0", c.initial.coop_fraction = to_double(k, v), fd(c.initial.coop_fraction)),
      CPRSIM_KEY("dt", c.integrator.dt = to_double(k, v), fd(c.integrator.dt)),
      CPRSIM_KEY("t_max", c.integrator.t_max = to_double(k, v), fd(c.integrator.t_max)),
      CPRSIM_KEY("conv_tol", c.integrator.conv_tol = to_double(k, v), fd(c.integrator.conv_tol)),
      CPRSIM_KEY("record_stride", c.integrator.record_stride = to_size(k, v), fu(c.integrator.record_stride)),
      CPRSIM_KEY("extinct_eps", c.integrator.extinct_eps = c.sim.extinct_eps = to_double(k, v), fd(c.integrator.extinct_eps)),
      CPRSIM_KEY("stop_on_convergence", c.integrator.stop_on_convergence = to_bool(k, v), format_bool(c.integrator.stop_on_convergence)),
      CPRSIM_KEY("N", c.sim.population = to_size(k, v), fu(c.sim.population)),
      CPRSIM_KEY("steps", c.sim.steps = to_u64(k, v), fu(c.sim.steps)),
      CPRSIM_KEY("sim_record_stride", c.sim.record_stride = to_size(k, v), fu(c.sim.record_stride)),
      CPRSIM_KEY("n_runs", c.n_runs = to_size(k, v), fu(c.n_runs)),
      CPRSIM_KEY("seed", c.seed = c.sim.seed = to_u64(k, v), fu(c.seed)),
      CPRSIM_KEY("R0_min", c.grid.resource.min = to_double(k, v), fd(c.grid.resource.min)),
      CPRSIM_KEY("R0_max", c.grid.resource.max = to_double(k, v), fd(c.grid.resource.max)),
      CPRSIM_KEY("x0_min", c.grid.coop.min = to_double(k, v), fd(c.grid.coop.min)),
      CPRSIM_KEY("x0_max", c.grid.coop.max = to_double(k, v), fd(c.grid.coop.max)),
      CPRSIM_KEY("resolution", c.grid.resource.points = c.grid.coop.points = to_size(k, v), fu(c.grid.resource.points)),
      CPRSIM_KEY("A_min", c.region_allee.min = to_double(k, v), fd(c.region_allee.min)),
      CPRSIM_KEY("A_max", c.region_allee.max = to_double(k, v), fd(c.region_allee.max)),
      CPRSIM_KEY("A_points", c.region_allee.points = to_size(k, v), fu(c.region_allee.points)),
      CPRSIM_KEY("A_open_min", c.region_allee.open_min = to_bool(k, v), format_bool(c.region_allee.open_min)),
      CPRSIM_KEY("e_D_min", c.region_defect.min = to_double(k, v), fd(c.region_defect.min)),
      CPRSIM_KEY("e_D_max", c.region_defect.max = to_double(k, v), fd(c.region_defect.max)),
      CPRSIM_KEY("e_D_points", c.region_defect.points = to_size(k, v), fu(c.region_defect.points)),
      CPRSIM_KEY("e_D_open_min", c.region_defect.open_min = to_bool(k, v), format_bool(c.region_defect.open_min)),
      CPRSIM_KEY("sweep", c.sweep = to_swept(k, v), std::string(to_string(c.sweep))),
      CPRSIM_KEY("sweep_min", c.sweep_range.min = to_double(k, v), fd(c.sweep_range.min)),
      CPRSIM_KEY("sweep_max", c.sweep_range.max = to_double(k, v), fd(c.sweep_range.max)),
      CPRSIM_KEY("sweep_points", c.sweep_range.points = to_size(k, v), fu(c.sweep_range.points)),
      CPRSIM_KEY("sweep_open_min", c.sweep_range.open_min = to_bool(k, v), format_bool(c.sweep_range.open_min)),
      CPRSIM_KEY("n_ics", c.n_ics = to_size(k, v), fu(c.n_ics)),
      CPRSIM_KEY("branch_rule",
                 (v == "same" || v == "replicator" || v == "knowledge")
                     ? void(c.branch_rule = std::string(v))
                     : bad_value(k, v, "same, replicator or knowledge"),
                 c.branch_rule),
      CPRSIM_KEY("out", c.out = std::string(v), c.out),
      CPRSIM_KEY("raw_out", c.raw_out = std::string(v), c.raw_out),
      CPRSIM_KEY("boundary_out", c.boundary_out = std::string(v), c.boundary_out),
  };
  return keys;
}

#undef CPRSIM_KEY

}  // namespace

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> out;
  for (const Key& k : registry()) out.push_back(k.name);
  return out;
}

void apply_setting(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("malformed config line '" + std::string(assignment) + "': expected key=value");
  const std::string_view key = trim(assignment.substr(0, eq));
  const std::string_view value = trim(assignment.substr(eq + 1));
  const auto& keys = registry();
  const auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return k.name == key; });
  if (it == keys.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->set(config, key, value);
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) apply_setting(base, line);
    pos = end + 1;
  }
  return base;
}

std::vector<std::string> echo_config(const RunConfig& config) {
  std::vector<std::string> lines;
  for (const Key& k : registry()) lines.push_back(std::string(k.name) + "=" + k.get(config));
  return lines;
}

RunConfig parse_metadata(std::string_view text) {
  constexpr std::string_view prefix = "# cfg ";
  RunConfig config;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (line.starts_with(prefix)) apply_setting(config, line.substr(prefix.size()));
    pos = end + 1;
  }
  return config;
}

StrategyRule resolve_branch_rule(const RunConfig& config) {
  if (config.branch_rule == "replicator") return StrategyRule::Replicator;
  if (config.branch_rule == "knowledge") return StrategyRule::KnowledgeFeedback;
  return config.rule;
}

}  // namespace cprsim::cli
