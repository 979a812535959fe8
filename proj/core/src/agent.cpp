#include "cprsim/agent.hpp"

#include <cmath>
#include <stdexcept>

#include "cprsim/parallel.hpp"

namespace cprsim {

void SimConfig::validate() const {
  if (population < 2) throw std::invalid_argument("simulation: population must be >= 2");
  if (steps == 0) throw std::invalid_argument("simulation: steps must be >= 1");
  if (record_stride == 0) throw std::invalid_argument("simulation: record_stride must be >= 1");
  if (!(extinct_eps > 0.0)) throw std::invalid_argument("simulation: extinct_eps must be > 0");
}

std::size_t initial_cooperators(double coop_fraction, std::size_t population) {
  if (!(coop_fraction >= 0.0 && coop_fraction <= 1.0))
    throw std::invalid_argument("initial cooperator fraction must lie in [0, 1]");
  // nearbyint honours the default round-to-nearest-even mode.
  return static_cast<std::size_t>(std::nearbyint(coop_fraction * static_cast<double>(population)));
}

Population micro_step_replicator(Population pop, double resource, const ModelParams& params,
                                 Rng& rng) {
  const std::uint64_t focal = rng.below(pop.size);
  std::uint64_t neighbour = rng.below(pop.size - 1);
  if (neighbour >= focal) ++neighbour;

  const bool focal_coop = focal < pop.cooperators;
  const bool neighbour_coop = neighbour < pop.cooperators;
  if (focal_coop == neighbour_coop) return pop;

  // (U_j - U_i) / dU_max reduces to -R when j cooperates, +R when j defects.
  const double half_w_r = 0.5 * params.greed * resource;
  if (focal_coop) {
    if (rng.bernoulli(0.5 + half_w_r)) --pop.cooperators;
  } else {
    if (rng.bernoulli(0.5 - half_w_r)) ++pop.cooperators;
  }
  return pop;
}

Population micro_step_knowledge(Population pop, double resource, const ModelParams& params,
                                Rng& rng) {
  const bool focal_coop = rng.below(pop.size) < pop.cooperators;
  const double defect_p = knowledge_defection_probability(resource, params);
  if (focal_coop) {
    if (rng.bernoulli(defect_p)) --pop.cooperators;
  } else {
    if (rng.bernoulli(1.0 - defect_p)) ++pop.cooperators;
  }
  return pop;
}

double resource_update_discrete(double resource, double coop_fraction, const ModelParams& params,
                                std::size_t population, GrowthKind kind, double extinct_eps) {
  const double drift = resource_drift({resource, coop_fraction}, params, kind);
  const double next = resource + drift / static_cast<double>(population);
  return confine({next, coop_fraction}, extinct_eps).resource;
}

Trajectory run_realization(const State& initial, const System& system, const SimConfig& config) {
  config.validate();
  const std::size_t n = config.population;
  const double n_real = static_cast<double>(n);
  Population pop{n, initial_cooperators(initial.coop_fraction, n)};
  double resource = initial.resource;
  Rng rng(config.seed);

  Trajectory traj;
  const std::size_t samples = config.steps / config.record_stride + 2;
  traj.times.reserve(samples);
  traj.states.reserve(samples);
  traj.times.push_back(0.0);
  traj.states.push_back({resource, pop.fraction()});

  for (std::uint64_t k = 1; k <= config.steps; ++k) {
    const double x_prev = pop.fraction();
    pop = system.rule == StrategyRule::Replicator
              ? micro_step_replicator(pop, resource, system.params, rng)
              : micro_step_knowledge(pop, resource, system.params, rng);
    resource = resource_update_discrete(resource, x_prev, system.params, n, system.growth,
                                        config.extinct_eps);
    if (k % config.record_stride == 0 || k == config.steps) {
      traj.times.push_back(static_cast<double>(k) / n_real);
      traj.states.push_back({resource, pop.fraction()});
    }
  }
  return traj;
}

EnsembleStats summarize(std::span<const Trajectory> runs) {
  if (runs.size() < 2) throw std::invalid_argument("ensemble: need at least two runs");
  const std::size_t len = runs.front().size();
  for (const auto& r : runs) {
    if (r.size() != len) throw std::invalid_argument("ensemble: runs sampled differently");
  }

  EnsembleStats out;
  out.n_runs = runs.size();
  out.times = runs.front().times;
  out.mean_resource.resize(len);
  out.sem_resource.resize(len);
  out.mean_coop.resize(len);
  out.sem_coop.resize(len);

  const double n = static_cast<double>(runs.size());
  for (std::size_t t = 0; t < len; ++t) {
    double sum_r = 0.0, sum_x = 0.0;
    for (const auto& r : runs) {
      sum_r += r.states[t].resource;
      sum_x += r.states[t].coop_fraction;
    }
    const double mean_r = sum_r / n, mean_x = sum_x / n;
    double ss_r = 0.0, ss_x = 0.0;
    for (const auto& r : runs) {
      const double dr = r.states[t].resource - mean_r;
      const double dx = r.states[t].coop_fraction - mean_x;
      ss_r += dr * dr;
      ss_x += dx * dx;
    }
    out.mean_resource[t] = mean_r;
    out.mean_coop[t] = mean_x;
    out.sem_resource[t] = std::sqrt(ss_r / (n - 1.0)) / std::sqrt(n);
    out.sem_coop[t] = std::sqrt(ss_x / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

std::vector<std::uint64_t> ensemble_seeds(std::uint64_t base_seed, std::size_t n_runs) {
  std::vector<std::uint64_t> seeds(n_runs);
  for (std::size_t i = 0; i < n_runs; ++i) seeds[i] = derive_seed(base_seed, i);
  return seeds;
}

EnsembleStats run_ensemble(const State& initial, const System& system, const SimConfig& config,
                           std::span<const std::uint64_t> seeds, unsigned threads,
                           std::vector<Trajectory>* raw) {
  config.validate();
  std::vector<Trajectory> runs(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    SimConfig run_config = config;
    run_config.seed = seeds[i];
    runs[i] = run_realization(initial, system, run_config);
  });
  EnsembleStats stats = summarize(runs);
  if (raw != nullptr) *raw = std::move(runs);
  return stats;
}

EnsembleStats run_ensemble(const State& initial, const System& system, const SimConfig& config,
                           std::size_t n_runs, unsigned threads, std::vector<Trajectory>* raw) {
  const auto seeds = ensemble_seeds(config.seed, n_runs);
  return run_ensemble(initial, system, config, seeds, threads, raw);
}

}  // namespace cprsim
