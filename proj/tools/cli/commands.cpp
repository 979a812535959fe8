#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "cprsim/analysis.hpp"
#include "cprsim/random.hpp"
#include "cprsim/version.hpp"
#include "format.hpp"

namespace cprsim::cli {

namespace {

using json = nlohmann::ordered_json;

void write_metadata(std::ostream& out, std::string_view command, const RunConfig& config,
                    const std::vector<std::string>& extra = {}) {
  out << "# cprsim " << kVersion << "\n";
  out << "# command " << command << "\n";
  for (const auto& line : extra) out << "# " << line << "\n";
  for (const auto& line : echo_config(config)) out << "# cfg " << line << "\n";
}

ValidatedParams checked_params(const RunConfig& config) {
  return validate_params(config.params, config.allow_unnormalized);
}

System make_system(const RunConfig& config) {
  return System{checked_params(config), config.growth, config.rule};
}

void check_unit_state(const State& s) {
  if (!(s.resource >= 0.0 && s.resource <= 1.0 && s.coop_fraction >= 0.0 &&
        s.coop_fraction <= 1.0))
    throw ConfigError("initial condition (R0, x0) must lie in [0, 1]^2");
}

std::ofstream open_sidecar(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  return f;
}

}  // namespace

void cmd_simulate(const RunConfig& config, const Options&, std::ostream& out) {
  const System system = make_system(config);
  check_unit_state(config.initial);
  const Trajectory traj = integrate(config.initial, system, config.integrator);

  write_metadata(out, "simulate", config, {"integrator=rk4 fixed step"});
  out << "t,R,x\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_double(traj.times[i]) << ',' << format_double(traj.states[i].resource) << ','
        << format_double(traj.states[i].coop_fraction) << '\n';
  }
}

void cmd_ensemble(const RunConfig& config, const Options& opts, std::ostream& out) {
  const System system = make_system(config);
  check_unit_state(config.initial);
  if (config.n_runs < 2) throw ConfigError("n_runs must be >= 2");
  SimConfig sim = config.sim;
  sim.seed = config.seed;

  const auto seeds = ensemble_seeds(config.seed, config.n_runs);
  std::vector<Trajectory> raw;
  const EnsembleStats stats =
      run_ensemble(config.initial, system, sim, seeds, opts.threads,
                   config.raw_out.empty() ? nullptr : &raw);

  const std::vector<std::string> extra = {std::string("rng=") + Rng::kDescription};
  write_metadata(out, "ensemble", config, extra);
  out << "t,mean_R,sem_R,mean_x,sem_x,n_runs\n";
  for (std::size_t i = 0; i < stats.times.size(); ++i) {
    out << format_double(stats.times[i]) << ',' << format_double(stats.mean_resource[i]) << ','
        << format_double(stats.sem_resource[i]) << ',' << format_double(stats.mean_coop[i]) << ','
        << format_double(stats.sem_coop[i]) << ',' << stats.n_runs << '\n';
  }

  if (!config.raw_out.empty()) {
    std::ofstream side = open_sidecar(config.raw_out);
    write_metadata(side, "ensemble-raw", config, extra);
    side << "run,seed,t,R,x\n";
    for (std::size_t r = 0; r < raw.size(); ++r) {
      for (std::size_t i = 0; i < raw[r].size(); ++i) {
        side << r << ',' << seeds[r] << ',' << format_double(raw[r].times[i]) << ','
             << format_double(raw[r].states[i].resource) << ','
             << format_double(raw[r].states[i].coop_fraction) << '\n';
      }
    }
  }
}

void cmd_fixed_points(const RunConfig& config, const Options&, std::ostream& out) {
  if (config.growth != GrowthKind::AlleeLogistic)
    throw ConfigError("fixed-points needs growth=allee (closed forms exist only for the Allee model)");
  const ValidatedParams params = checked_params(config);
  const auto points = config.rule == StrategyRule::Replicator ? replicator_fixed_points(params)
                                                              : knowledge_fixed_points(params);

  json cfg = json::object();
  for (const auto& line : echo_config(config)) {
    const auto eq = line.find('=');
    cfg[line.substr(0, eq)] = line.substr(eq + 1);
  }
  json list = json::array();
  for (const FixedPoint& fp : points) {
    json eig = json::array();
    for (const auto& e : fp.eigenvalues) eig.push_back({{"re", e.real()}, {"im", e.imag()}});
    list.push_back({{"R", fp.location.resource},
                    {"x", fp.location.coop_fraction},
                    {"x_free", fp.coop_fraction_free},
                    {"label", to_string(fp.label)},
                    {"eigenvalues", eig},
                    {"classification", to_string(fp.stability)},
                    {"residual", fp.residual}});
  }
  const json doc = {{"cprsim_version", kVersion},
                    {"command", "fixed-points"},
                    {"config", cfg},
                    {"fixed_points", list}};
  out << doc.dump(2) << '\n';
}

void cmd_basin(const RunConfig& config, const Options& opts, std::ostream& out) {
  const System system = make_system(config);
  const BasinGrid grid = basin_grid(system, config.grid, config.integrator, opts.threads);

  std::vector<std::string> extra = {
      "grid=" + std::to_string(config.grid.resource.points) + "x" +
      std::to_string(config.grid.coop.points),
      "sustainable_fraction=" + format_double(grid.sustainable_fraction())};
  write_metadata(out, "basin", config, extra);
  out << "R0,x0,R_star\n";
  for (std::size_t i = 0; i < config.grid.resource.points; ++i) {
    for (std::size_t j = 0; j < config.grid.coop.points; ++j) {
      out << format_double(config.grid.resource.value(i)) << ','
          << format_double(config.grid.coop.value(j)) << ',' << format_double(grid.at(i, j))
          << '\n';
    }
  }

  if (!config.boundary_out.empty()) {
    std::ofstream side = open_sidecar(config.boundary_out);
    write_metadata(side, "basin-critical-line", config);
    side << "R0,x0\n";
    if (grid.predicted_boundary) {
      for (const State& s : *grid.predicted_boundary)
        side << format_double(s.resource) << ',' << format_double(s.coop_fraction) << '\n';
    }
  }
}

void cmd_region(const RunConfig& config, const Options&, std::ostream& out) {
  const RegionMap map = region_map(config.params.coop_extraction, config.region_allee,
                                   config.region_defect, config.rule);
  write_metadata(out, "region", config, {"bistable_cells=" + std::to_string(map.count())});
  out << "A,e_D_hat,bistable\n";
  for (std::size_t i = 0; i < map.allee.points; ++i) {
    for (std::size_t j = 0; j < map.defect.points; ++j) {
      out << format_double(map.allee.value(i)) << ',' << format_double(map.defect.value(j)) << ','
          << format_bool(map.at(i, j)) << '\n';
    }
  }
}

void cmd_compare_regions(const RunConfig& config, const Options&, std::ostream& out) {
  const double ec = config.params.coop_extraction;
  const RegionMap rep =
      region_map(ec, config.region_allee, config.region_defect, StrategyRule::Replicator);
  const RegionMap kf =
      region_map(ec, config.region_allee, config.region_defect, StrategyRule::KnowledgeFeedback);
  const RegionComparison cmp = compare_regions(rep, kf);

  write_metadata(out, "compare-regions", config,
                 {"replicator_cells=" + std::to_string(cmp.replicator_cells),
                  "knowledge_cells=" + std::to_string(cmp.knowledge_cells),
                  "shared_cells=" + std::to_string(cmp.shared_cells),
                  "replicator_only_cells=" + std::to_string(cmp.replicator_only.size()),
                  "replicator_within_knowledge=" + format_bool(cmp.replicator_within_knowledge)});
  out << "A,e_D_hat,replicator,knowledge\n";
  for (std::size_t i = 0; i < rep.allee.points; ++i) {
    for (std::size_t j = 0; j < rep.defect.points; ++j) {
      out << format_double(rep.allee.value(i)) << ',' << format_double(rep.defect.value(j)) << ','
          << format_bool(rep.at(i, j)) << ',' << format_bool(kf.at(i, j)) << '\n';
    }
  }
}

void cmd_bifurcation(const RunConfig& config, const Options& opts, std::ostream& out) {
  if (config.growth != GrowthKind::AlleeLogistic)
    throw ConfigError("bifurcation needs growth=allee");
  BifurcationRequest req;
  req.rule = config.rule;
  req.branch_rule = resolve_branch_rule(config);
  req.parameter = config.sweep;
  req.range = config.sweep_range;
  req.base = config.params;
  req.n_ics = config.n_ics;
  req.base_seed = config.seed;
  req.integrator = config.integrator;
  const BifurcationScan scan = bifurcation_scan(req, opts.threads);

  write_metadata(out, "bifurcation", config,
                 {std::string("rng=") + Rng::kDescription,
                  "initial_conditions=uniform on (0.01,0.99)^2, R0 then x0 drawn from Rng(seed)",
                  "seed_derivation=derive_seed(derive_seed(seed, value_index), ic_index)",
                  "branches_from=" + std::string(to_string(req.branch_rule))});
  out << "param_value,branch_or_sim,R_star,seed\n";
  for (const BifurcationSlice& s : scan.slices) {
    const std::string v = format_double(s.value);
    if (s.stable_sustainable)
      out << v << ",stable_sustainable," << format_double(*s.stable_sustainable) << ",\n";
    if (s.unstable) out << v << ",unstable," << format_double(*s.unstable) << ",\n";
    out << v << ",stable_unsustainable," << format_double(s.stable_unsustainable) << ",\n";
    for (const SimulatedPoint& p : s.sims)
      out << v << ",sim," << format_double(p.r_star) << ',' << p.seed << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cprsim: common-pool resource coevolution with an Allee effect"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path;
  std::vector<std::string> settings;
  std::uint64_t seed = 0;
  Options opts;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_path, "output file (default: standard output)");
  auto* seed_opt = app.add_option("--seed", seed, "base seed (overrides the config)");
  app.add_option("--threads", opts.threads, "worker threads for sweeps and ensembles")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--quiet", opts.quiet, "suppress progress messages");
  app.add_option("--set", settings, "extra key=value overrides, applied after --config");

  using Command = void (*)(const RunConfig&, const Options&, std::ostream&);
  const std::vector<std::pair<std::string, Command>> commands = {
      {"simulate", cmd_simulate},       {"ensemble", cmd_ensemble},
      {"fixed-points", cmd_fixed_points}, {"basin", cmd_basin},
      {"region", cmd_region},           {"compare-regions", cmd_compare_regions},
      {"bifurcation", cmd_bifurcation}};
  const std::vector<std::string> help = {
      "integrate the macroscopic ODE (CSV t,R,x)",
      "agent-based ensemble mean and standard error",
      "closed-form equilibria with numeric stability (JSON)",
      "steady-state R* over an (R0, x0) grid",
      "analytic bi-stability map over (A, e_D_hat)",
      "replicator vs knowledge-feedback bi-stability regions",
      "equilibria and simulated R* against e_D_hat or A"};
  for (std::size_t i = 0; i < commands.size(); ++i) app.add_subcommand(commands[i].first, help[i]);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream buf;
      buf << f.rdbuf();
      config = parse_config(buf.str());
    }
    for (const auto& s : settings) apply_setting(config, s);
    if (*seed_opt) config.seed = config.sim.seed = seed;
    if (!out_path.empty()) config.out = out_path;

    Command command = nullptr;
    std::string name;
    for (const auto& [n, c] : commands) {
      if (app.got_subcommand(n)) {
        command = c;
        name = n;
      }
    }

    if (config.out.empty()) {
      command(config, opts, out);
    } else {
      std::ostringstream doc;
      command(config, opts, doc);
      std::ofstream f(config.out, std::ios::binary);
      if (!f) throw ConfigError("cannot open output file '" + config.out + "'");
      f << doc.str();
      if (!opts.quiet) err << "wrote " << name << " output to " << config.out << '\n';
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParamDomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace cprsim::cli
