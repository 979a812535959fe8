#pragma once

#include <cstddef>
#include <vector>

#include "cprsim/model.hpp"

namespace cprsim {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_max = 200.0;
  double conv_tol = 1e-9;        // steady state when max|rhs| <= conv_tol
  std::size_t record_stride = 100;
  double extinct_eps = 1e-12;    // R below this snaps to exactly 0
  bool stop_on_convergence = false;

  // Throws std::invalid_argument on a non-positive tolerance or dt >= t_max.
  void validate() const;
  std::size_t step_count() const;
  friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

// Sampled solution. Times are strictly increasing and every state lies in
// the unit square.
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  const State& final_state() const { return states.back(); }
};

struct SteadyStateResult {
  State final;
  bool converged = false;
  double t_elapsed = 0.0;
  double rhs_norm = 0.0;
};

// Clamp to [0,1]^2 and snap R < extinct_eps to 0.
State confine(State state, double extinct_eps) noexcept;

// One classical RK4 step followed by confine(). Throws NonFiniteState if a
// stage evaluates to NaN or infinity.
State step_rk4(const State& state, const System& system, double dt,
               double extinct_eps = 1e-12);

// Fixed-step integration from t = 0. Records every `record_stride` steps and
// always the final state; stops early on convergence if configured.
Trajectory integrate(const State& initial, const System& system, const IntegratorConfig& config);

// Integrates until max|rhs| <= conv_tol or t_max. Non-convergence is reported
// in the result, not thrown.
SteadyStateResult run_to_steady_state(const State& initial, const System& system,
                                      const IntegratorConfig& config);

}  // namespace cprsim
