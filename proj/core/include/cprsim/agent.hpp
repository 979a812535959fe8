#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cprsim/model.hpp"
#include "cprsim/ode.hpp"
#include "cprsim/random.hpp"

namespace cprsim {

// Players on a complete graph. Identities are exchangeable, so only the
// cooperator count is kept: players [0, cooperators) cooperate.
struct Population {
  std::size_t size = 0;
  std::size_t cooperators = 0;

  double fraction() const noexcept {
    return static_cast<double>(cooperators) / static_cast<double>(size);
  }
  friend bool operator==(const Population&, const Population&) = default;
};

struct SimConfig {
  std::size_t population = 200;   // N >= 2
  std::uint64_t steps = 10000;    // micro-steps k; time t = k / N
  std::uint64_t seed = 1;
  std::size_t record_stride = 200;
  double extinct_eps = 1e-12;

  void validate() const;
  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> mean_resource;
  std::vector<double> sem_resource;
  std::vector<double> mean_coop;
  std::vector<double> sem_coop;
  std::size_t n_runs = 0;
};

// Cooperator count for an initial fraction: round(x0 N), ties to even.
std::size_t initial_cooperators(double coop_fraction, std::size_t population);

// Focal i and neighbour j != i drawn uniformly; if strategies differ, i copies
// j with probability 1/2 - wR/2 (j cooperates) or 1/2 + wR/2 (j defects).
Population micro_step_replicator(Population pop, double resource, const ModelParams& params,
                                 Rng& rng);

// Focal i drawn uniformly; a cooperator defects with p = step(R-A)(R-A)/(K-A),
// a defector cooperates with 1 - p.
Population micro_step_knowledge(Population pop, double resource, const ModelParams& params,
                                Rng& rng);

// Euler step of size 1/N on the resource drift, then confine().
double resource_update_discrete(double resource, double coop_fraction, const ModelParams& params,
                                std::size_t population, GrowthKind kind,
                                double extinct_eps = 1e-12);

// One realization: per micro-step, a strategy update and then a resource
// update that reads the pre-update fraction. Times are k / N.
Trajectory run_realization(const State& initial, const System& system, const SimConfig& config);

// Per-sample mean and standard error (sample sd / sqrt(n)) over equally
// sampled trajectories; needs at least two.
EnsembleStats summarize(std::span<const Trajectory> runs);

// Realizations with explicit seeds (config.seed is ignored).
EnsembleStats run_ensemble(const State& initial, const System& system, const SimConfig& config,
                           std::span<const std::uint64_t> seeds, unsigned threads = 1,
                           std::vector<Trajectory>* raw = nullptr);

// n_runs realizations seeded derive_seed(config.seed, run_index).
EnsembleStats run_ensemble(const State& initial, const System& system, const SimConfig& config,
                           std::size_t n_runs, unsigned threads = 1,
                           std::vector<Trajectory>* raw = nullptr);

std::vector<std::uint64_t> ensemble_seeds(std::uint64_t base_seed, std::size_t n_runs);

}  // namespace cprsim
