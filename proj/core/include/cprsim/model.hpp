#pragma once

#include <string_view>

namespace cprsim {

// Parameters of the coevolving resource/strategy system. Extraction rates are
// the normalized ones, e_hat = N * e / T.
struct ModelParams {
  double growth_rate = 2.0;        // T
  double allee_threshold = 0.1;    // A
  double carrying_capacity = 1.0;  // K
  double coop_extraction = 0.5;    // e_C_hat
  double defect_extraction = 1.5;  // e_D_hat
  double greed = 1.0;              // w, replicator rule only

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// ModelParams that passed validate_params(). Converts implicitly to the plain
// struct so the drift functions accept either.
class ValidatedParams {
 public:
  const ModelParams& get() const noexcept { return params_; }
  operator const ModelParams&() const noexcept { return params_; }  // NOLINT
  const ModelParams* operator->() const noexcept { return &params_; }

  friend bool operator==(const ValidatedParams&, const ValidatedParams&) = default;

 private:
  explicit ValidatedParams(const ModelParams& p) : params_(p) {}
  friend ValidatedParams validate_params(const ModelParams&, bool);

  ModelParams params_;
};

// Throws ParamDomainError naming the first violated constraint:
//   T > 0, 0 < A < K, 0 < e_C_hat < 1 < e_D_hat, 0 < w <= 1, and K == 1
//   unless `allow_unnormalized` is set.
ValidatedParams validate_params(const ModelParams& params,
                                bool allow_unnormalized = false);

enum class GrowthKind { PlainLogistic, AlleeLogistic };
enum class StrategyRule { Replicator, KnowledgeFeedback };

std::string_view to_string(GrowthKind kind) noexcept;
std::string_view to_string(StrategyRule rule) noexcept;

struct State {
  double resource = 0.0;       // R
  double coop_fraction = 0.0;  // x

  friend bool operator==(const State&, const State&) = default;
};

// Time derivatives (dR/dt, dx/dt).
struct Rates {
  double resource = 0.0;
  double coop_fraction = 0.0;

  double max_norm() const noexcept;
};

// A fully specified vector field: parameters plus the growth and update rules.
struct System {
  ValidatedParams params;
  GrowthKind growth = GrowthKind::AlleeLogistic;
  StrategyRule rule = StrategyRule::Replicator;
};

// Unit step with step(0) = 1.
constexpr double unit_step(double y) noexcept { return y < 0.0 ? 0.0 : 1.0; }

// Resource growth alone: T R (1 - R/K), or T R (R/A - 1)(1 - R/K).
double growth_rate(double resource, const ModelParams& params, GrowthKind kind) noexcept;

// growth_rate(R) - T R (x e_C_hat + (1 - x) e_D_hat).
double resource_drift(const State& state, const ModelParams& params, GrowthKind kind) noexcept;

// Replicator: -w R x (1 - x).
// Knowledge feedback: 1 - x - step(R - A) (R - A) / (K - A).
double strategy_drift(const State& state, const ModelParams& params, StrategyRule rule) noexcept;

// Probability that a cooperator turns defector under knowledge feedback.
double knowledge_defection_probability(double resource, const ModelParams& params) noexcept;

Rates coevolution_rhs(const State& state, const ModelParams& params, GrowthKind kind,
                      StrategyRule rule) noexcept;

inline Rates coevolution_rhs(const State& state, const System& system) noexcept {
  return coevolution_rhs(state, system.params, system.growth, system.rule);
}

}  // namespace cprsim
