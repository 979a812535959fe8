#include "cprsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cprsim/errors.hpp"

namespace cprsim {

namespace {

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ParamDomainError(field, std::string("invalid ") + field + ": " + message);
}

}  // namespace

ValidatedParams validate_params(const ModelParams& p, bool allow_unnormalized) {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(p.growth_rate) && p.growth_rate > 0.0, "T", "growth rate must be positive");
  require(finite(p.carrying_capacity) && p.carrying_capacity > 0.0, "K",
          "carrying capacity must be positive");
  require(allow_unnormalized || p.carrying_capacity == 1.0, "K",
          "carrying capacity must be 1 (normalized resource); set allow_unnormalized to override");
  require(finite(p.allee_threshold) && p.allee_threshold > 0.0 &&
              p.allee_threshold < p.carrying_capacity,
          "A", "Allee parameter must satisfy 0 < A < K");
  require(finite(p.coop_extraction) && p.coop_extraction > 0.0 && p.coop_extraction < 1.0,
          "e_C_hat", "cooperator extraction must satisfy 0 < e_C_hat < 1");
  require(finite(p.defect_extraction) && p.defect_extraction > 1.0, "e_D_hat",
          "defector extraction must satisfy e_D_hat > 1");
  require(finite(p.greed) && p.greed > 0.0 && p.greed <= 1.0, "w",
          "greed must satisfy 0 < w <= 1");
  return ValidatedParams(p);
}

std::string_view to_string(GrowthKind kind) noexcept {
  return kind == GrowthKind::PlainLogistic ? "logistic" : "allee";
}

std::string_view to_string(StrategyRule rule) noexcept {
  return rule == StrategyRule::Replicator ? "replicator" : "knowledge";
}

double Rates::max_norm() const noexcept {
  return std::max(std::abs(resource), std::abs(coop_fraction));
}

double growth_rate(double r, const ModelParams& p, GrowthKind kind) noexcept {
  const double crowding = 1.0 - r / p.carrying_capacity;
  if (kind == GrowthKind::PlainLogistic) return p.growth_rate * r * crowding;
  return p.growth_rate * r * (r / p.allee_threshold - 1.0) * crowding;
}

double resource_drift(const State& s, const ModelParams& p, GrowthKind kind) noexcept {
  const double x = s.coop_fraction;
  const double extraction = x * p.coop_extraction + (1.0 - x) * p.defect_extraction;
  return growth_rate(s.resource, p, kind) - p.growth_rate * s.resource * extraction;
}

double knowledge_defection_probability(double r, const ModelParams& p) noexcept {
  const double excess = r - p.allee_threshold;
  return unit_step(excess) * excess / (p.carrying_capacity - p.allee_threshold);
}

double strategy_drift(const State& s, const ModelParams& p, StrategyRule rule) noexcept {
  const double x = s.coop_fraction;
  if (rule == StrategyRule::Replicator) return -p.greed * s.resource * x * (1.0 - x);
  return 1.0 - x - knowledge_defection_probability(s.resource, p);
}

Rates coevolution_rhs(const State& s, const ModelParams& p, GrowthKind kind,
                      StrategyRule rule) noexcept {
  return {resource_drift(s, p, kind), strategy_drift(s, p, rule)};
}

}  // namespace cprsim
