#include "cprsim/sweep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cprsim/analysis.hpp"
#include "cprsim/errors.hpp"
#include "cprsim/parallel.hpp"
#include "cprsim/random.hpp"

namespace cprsim {

double Axis::value(std::size_t i) const noexcept {
  if (open_min) return min + (max - min) * static_cast<double>(i + 1) / static_cast<double>(points);
  if (points == 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(points - 1);
}

double Axis::step() const noexcept {
  if (open_min) return (max - min) / static_cast<double>(points);
  return points > 1 ? (max - min) / static_cast<double>(points - 1) : 0.0;
}

void Axis::validate(std::string_view name) const {
  const std::string n(name);
  if (points == 0) throw std::invalid_argument(n + ": need at least one point");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw std::invalid_argument(n + ": need min < max");
}

GridSpec GridSpec::square(double r_min, double r_max, double x_min, double x_max,
                          std::size_t resolution) {
  return {{r_min, r_max, resolution}, {x_min, x_max, resolution}};
}

void GridSpec::validate() const {
  resource.validate("grid R0 axis");
  coop.validate("grid x0 axis");
  if (resource.min < 0.0 || resource.max > 1.0 || coop.min < 0.0 || coop.max > 1.0)
    throw std::invalid_argument("grid must lie inside the unit square");
}

std::size_t BasinGrid::sustainable_cells(double threshold) const {
  std::size_t n = 0;
  for (double r : r_star) n += r > threshold ? 1 : 0;
  return n;
}

double BasinGrid::sustainable_fraction(double threshold) const {
  return r_star.empty() ? 0.0
                        : static_cast<double>(sustainable_cells(threshold)) /
                              static_cast<double>(r_star.size());
}

BasinGrid basin_grid(const System& system, const GridSpec& spec,
                     const IntegratorConfig& integrator, unsigned threads) {
  spec.validate();
  integrator.validate();
  const std::size_t nr = spec.resource.points, nx = spec.coop.points;

  BasinGrid grid;
  grid.spec = spec;
  grid.r_star.assign(nr * nx, 0.0);
  grid.converged.assign(nr * nx, 0);

  parallel_for(nr * nx, threads, [&](std::size_t cell) {
    const std::size_t i = cell / nx, j = cell % nx;
    const State initial{spec.resource.value(i), spec.coop.value(j)};
    try {
      const SteadyStateResult res = run_to_steady_state(initial, system, integrator);
      grid.r_star[cell] = res.final.resource;
      grid.converged[cell] = res.converged ? 1 : 0;
    } catch (const NonFiniteState& e) {
      throw NonFiniteState("basin cell (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") at R0=" + std::to_string(initial.resource) +
                           ", x0=" + std::to_string(initial.coop_fraction) + ": " + e.what());
    }
  });

  const ModelParams& p = system.params;
  if (system.rule == StrategyRule::Replicator && system.growth == GrowthKind::AlleeLogistic &&
      p.carrying_capacity == 1.0 &&
      replicator_bistable_condition(p.allee_threshold, p.defect_extraction)) {
    std::vector<State> line;
    line.reserve(nx);
    for (std::size_t j = 0; j < nx; ++j) {
      const double x0 = spec.coop.value(j);
      line.push_back({critical_line_r0(x0, system.params), x0});
    }
    grid.predicted_boundary = std::move(line);
  }
  return grid;
}

LineAgreement compare_with_critical_line(const BasinGrid& grid, const ValidatedParams& params,
                                         double threshold) {
  const GridSpec& spec = grid.spec;
  const double cell = spec.resource.step();
  LineAgreement out;
  for (std::size_t i = 0; i < spec.resource.points; ++i) {
    for (std::size_t j = 0; j < spec.coop.points; ++j) {
      const State initial{spec.resource.value(i), spec.coop.value(j)};
      const bool simulated = grid.at(i, j) > threshold;
      ++out.cells;
      if (simulated == predicts_sustainable(initial, params)) continue;
      ++out.mismatches;
      const double line_r0 = critical_line_r0(initial.coop_fraction, params);
      if (std::abs(initial.resource - line_r0) > cell) ++out.far_mismatches;
    }
  }
  return out;
}

std::size_t RegionMap::count() const noexcept {
  std::size_t n = 0;
  for (char b : bistable) n += b != 0 ? 1 : 0;
  return n;
}

RegionMap region_map(double coop_extraction, const Axis& allee, const Axis& defect,
                     StrategyRule rule) {
  allee.validate("A axis");
  defect.validate("e_D_hat axis");
  RegionMap map{rule, coop_extraction, allee, defect, {}};
  map.bistable.resize(allee.points * defect.points);
  for (std::size_t i = 0; i < allee.points; ++i) {
    const double a = allee.value(i);
    for (std::size_t j = 0; j < defect.points; ++j) {
      const double ed = defect.value(j);
      const bool b = rule == StrategyRule::Replicator
                         ? replicator_bistable_condition(a, ed)
                         : knowledge_bistable_condition(a, coop_extraction, ed);
      map.bistable[i * defect.points + j] = b ? 1 : 0;
    }
  }
  return map;
}

RegionComparison compare_regions(const RegionMap& rep, const RegionMap& kf) {
  if (!(rep.allee == kf.allee) || !(rep.defect == kf.defect))
    throw AxisMismatch("region maps were computed over different axes");
  RegionComparison out;
  for (std::size_t i = 0; i < rep.allee.points; ++i) {
    for (std::size_t j = 0; j < rep.defect.points; ++j) {
      const bool r = rep.at(i, j), k = kf.at(i, j);
      out.replicator_cells += r ? 1 : 0;
      out.knowledge_cells += k ? 1 : 0;
      out.shared_cells += (r && k) ? 1 : 0;
      if (r && !k) out.replicator_only.emplace_back(i, j);
      if (k && !r) out.knowledge_only.emplace_back(i, j);
    }
  }
  out.replicator_within_knowledge = out.replicator_only.empty();
  return out;
}

std::string_view to_string(SweptParameter p) noexcept {
  return p == SweptParameter::Allee ? "A" : "e_D_hat";
}

State random_initial_condition(std::uint64_t seed) {
  Rng rng(seed);
  const double r = 0.01 + 0.98 * rng.uniform();
  const double x = 0.01 + 0.98 * rng.uniform();
  return {r, x};
}

namespace {

void fill_branches(BifurcationSlice& slice, const ValidatedParams& params, StrategyRule rule) {
  const auto points = rule == StrategyRule::Replicator ? replicator_fixed_points(params)
                                                       : knowledge_fixed_points(params);
  for (const FixedPoint& fp : points) {
    switch (fp.label) {
      case FixedPointLabel::SDplus:
      case FixedPointLabel::KF_minus:
      case FixedPointLabel::KF_plus:
      case FixedPointLabel::SDminus:
        if (fp.stability == Stability::Stable)
          slice.stable_sustainable = fp.location.resource;
        else
          slice.unstable = fp.location.resource;
        break;
      default:
        break;
    }
  }
}

}  // namespace

BifurcationScan bifurcation_scan(const BifurcationRequest& request, unsigned threads) {
  request.range.validate(to_string(request.parameter));
  request.integrator.validate();

  BifurcationScan scan;
  scan.request = request;
  const std::size_t nv = request.range.points, nics = request.n_ics;
  scan.slices.resize(nv);

  std::vector<ValidatedParams> params;
  params.reserve(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    ModelParams p = request.base;
    const double value = request.range.value(v);
    if (request.parameter == SweptParameter::Allee)
      p.allee_threshold = value;
    else
      p.defect_extraction = value;
    params.push_back(validate_params(p));
    scan.slices[v].value = value;
    fill_branches(scan.slices[v], params.back(), request.branch_rule);
    scan.slices[v].sims.resize(nics);
  }

  parallel_for(nv * nics, threads, [&](std::size_t task) {
    const std::size_t v = task / nics, ic = task % nics;
    const std::uint64_t seed = derive_seed(derive_seed(request.base_seed, v), ic);
    const State initial = random_initial_condition(seed);
    const System system{params[v], GrowthKind::AlleeLogistic, request.rule};
    const SteadyStateResult res = run_to_steady_state(initial, system, request.integrator);
    scan.slices[v].sims[ic] = {initial, seed, res.final.resource, res.converged};
  });
  return scan;
}

}  // namespace cprsim
