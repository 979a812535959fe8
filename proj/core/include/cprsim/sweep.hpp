#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cprsim/model.hpp"
#include "cprsim/ode.hpp"

namespace cprsim {

// Terminal R above this counts as the sustainable fate; a point is "on" an
// analytic branch when within this distance in R.
inline constexpr double kFateTolerance = 1e-3;

// Evenly spaced values over [min, max], or (min, max] when open_min is set
// (then the first value is min + (max - min) / points).
struct Axis {
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 101;
  bool open_min = false;

  double value(std::size_t i) const noexcept;
  double step() const noexcept;
  void validate(std::string_view name) const;
  friend bool operator==(const Axis&, const Axis&) = default;
};

// Initial-condition grid over (R0, x0).
struct GridSpec {
  Axis resource{0.0, 1.0, 101};
  Axis coop{0.0, 1.0, 101};

  static GridSpec square(double r_min, double r_max, double x_min, double x_max,
                         std::size_t resolution);
  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct BasinGrid {
  GridSpec spec;
  std::vector<double> r_star;  // r_star[i * coop.points + j] for R0 index i, x0 index j
  std::vector<char> converged;
  std::optional<std::vector<State>> predicted_boundary;  // (R0, x0) on the critical line

  double at(std::size_t i, std::size_t j) const { return r_star[i * spec.coop.points + j]; }
  std::size_t sustainable_cells(double threshold = kFateTolerance) const;
  double sustainable_fraction(double threshold = kFateTolerance) const;
};

// Steady-state R* from every grid cell. Attaches the critical line for the
// replicator rule with Allee growth when it exists.
BasinGrid basin_grid(const System& system, const GridSpec& spec,
                     const IntegratorConfig& integrator, unsigned threads = 1);

struct LineAgreement {
  std::size_t cells = 0;
  std::size_t mismatches = 0;  // simulated fate differs from critical-line prediction
  std::size_t far_mismatches = 0;  // ... and more than one R0 cell away from the line
  double mismatch_fraction() const noexcept {
    return cells == 0 ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(cells);
  }
};

LineAgreement compare_with_critical_line(const BasinGrid& grid, const ValidatedParams& params,
                                         double threshold = kFateTolerance);

// Analytic bi-stability over (A, e_D_hat) at fixed e_C_hat.
struct RegionMap {
  StrategyRule rule = StrategyRule::Replicator;
  double coop_extraction = 0.5;
  Axis allee;
  Axis defect;
  std::vector<char> bistable;  // bistable[i * defect.points + j]

  bool at(std::size_t i, std::size_t j) const { return bistable[i * defect.points + j] != 0; }
  std::size_t count() const noexcept;
};

RegionMap region_map(double coop_extraction, const Axis& allee, const Axis& defect,
                     StrategyRule rule);

struct RegionComparison {
  std::size_t replicator_cells = 0;
  std::size_t knowledge_cells = 0;
  std::size_t shared_cells = 0;
  std::vector<std::pair<std::size_t, std::size_t>> replicator_only;  // (A index, e_D index)
  std::vector<std::pair<std::size_t, std::size_t>> knowledge_only;
  bool replicator_within_knowledge = true;
};

// Throws AxisMismatch unless both maps share axes.
RegionComparison compare_regions(const RegionMap& replicator, const RegionMap& knowledge);

enum class SweptParameter { DefectExtraction, Allee };
std::string_view to_string(SweptParameter p) noexcept;

struct BifurcationRequest {
  StrategyRule rule = StrategyRule::Replicator;         // simulated dynamics
  StrategyRule branch_rule = StrategyRule::Replicator;  // source of analytic branches
  SweptParameter parameter = SweptParameter::DefectExtraction;
  Axis range{1.0, 3.0, 81};
  ModelParams base;  // the swept field is overwritten per value
  std::size_t n_ics = 50;
  std::uint64_t base_seed = 1;
  IntegratorConfig integrator;
};

struct SimulatedPoint {
  State initial;
  std::uint64_t seed = 0;
  double r_star = 0.0;
  bool converged = false;
};

struct BifurcationSlice {
  double value = 0.0;
  std::optional<double> stable_sustainable;
  std::optional<double> unstable;
  double stable_unsustainable = 0.0;
  std::vector<SimulatedPoint> sims;
};

struct BifurcationScan {
  BifurcationRequest request;
  std::vector<BifurcationSlice> slices;
};

// Initial condition uniform on (0.01, 0.99)^2 drawn from `seed`.
State random_initial_condition(std::uint64_t seed);

// Seeds are derive_seed(derive_seed(base_seed, value_index), ic_index).
BifurcationScan bifurcation_scan(const BifurcationRequest& request, unsigned threads = 1);

}  // namespace cprsim
