#include "cprsim/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cprsim/errors.hpp"

namespace cprsim {

namespace {

Rates checked_rhs(const State& s, const System& system) {
  const Rates r = coevolution_rhs(s, system);
  if (!std::isfinite(r.resource) || !std::isfinite(r.coop_fraction)) {
    throw NonFiniteState("non-finite derivative at R=" + std::to_string(s.resource) +
                         ", x=" + std::to_string(s.coop_fraction));
  }
  return r;
}

State advance(const State& s, const Rates& k, double h) noexcept {
  return {s.resource + h * k.resource, s.coop_fraction + h * k.coop_fraction};
}

// RK4 with the first stage supplied by the caller, so the convergence check
// and the next step share one evaluation.
State rk4_from(const State& s, const Rates& k1, const System& system, double dt,
               double extinct_eps) {
  const Rates k2 = checked_rhs(advance(s, k1, dt / 2), system);
  const Rates k3 = checked_rhs(advance(s, k2, dt / 2), system);
  const Rates k4 = checked_rhs(advance(s, k3, dt), system);
  State next{
      s.resource + dt / 6 * (k1.resource + 2 * k2.resource + 2 * k3.resource + k4.resource),
      s.coop_fraction +
          dt / 6 * (k1.coop_fraction + 2 * k2.coop_fraction + 2 * k3.coop_fraction + k4.coop_fraction)};
  if (!std::isfinite(next.resource) || !std::isfinite(next.coop_fraction)) {
    throw NonFiniteState("non-finite state after RK4 step");
  }
  return confine(next, extinct_eps);
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !(t_max > 0.0) || !(dt < t_max))
    throw std::invalid_argument("integrator: need 0 < dt < t_max");
  if (!(conv_tol > 0.0) || !(extinct_eps > 0.0))
    throw std::invalid_argument("integrator: tolerances must be positive");
  if (record_stride == 0) throw std::invalid_argument("integrator: record_stride must be >= 1");
}

std::size_t IntegratorConfig::step_count() const {
  // t_max / dt is usually meant to be integral; tolerate rounding noise.
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

State confine(State s, double extinct_eps) noexcept {
  s.resource = std::clamp(s.resource, 0.0, 1.0);
  s.coop_fraction = std::clamp(s.coop_fraction, 0.0, 1.0);
  if (s.resource < extinct_eps) s.resource = 0.0;
  return s;
}

State step_rk4(const State& state, const System& system, double dt, double extinct_eps) {
  return rk4_from(state, checked_rhs(state, system), system, dt, extinct_eps);
}

Trajectory integrate(const State& initial, const System& system, const IntegratorConfig& config) {
  config.validate();
  const std::size_t n = config.step_count();

  Trajectory traj;
  traj.times.reserve(n / config.record_stride + 2);
  traj.states.reserve(n / config.record_stride + 2);

  State s = initial;
  traj.times.push_back(0.0);
  traj.states.push_back(s);

  std::size_t k = 0;
  Rates rates = checked_rhs(s, system);
  while (k < n) {
    if (config.stop_on_convergence && rates.max_norm() <= config.conv_tol) break;
    s = rk4_from(s, rates, system, config.dt, config.extinct_eps);
    ++k;
    rates = checked_rhs(s, system);
    if (k % config.record_stride == 0) {
      traj.times.push_back(static_cast<double>(k) * config.dt);
      traj.states.push_back(s);
    }
  }
  if (k % config.record_stride != 0) {
    traj.times.push_back(static_cast<double>(k) * config.dt);
    traj.states.push_back(s);
  }
  return traj;
}

SteadyStateResult run_to_steady_state(const State& initial, const System& system,
                                      const IntegratorConfig& config) {
  config.validate();
  const std::size_t n = config.step_count();

  State s = initial;
  Rates rates = checked_rhs(s, system);
  std::size_t k = 0;
  while (rates.max_norm() > config.conv_tol && k < n) {
    s = rk4_from(s, rates, system, config.dt, config.extinct_eps);
    ++k;
    rates = checked_rhs(s, system);
  }
  const double norm = rates.max_norm();
  return {s, norm <= config.conv_tol, static_cast<double>(k) * config.dt, norm};
}

}  // namespace cprsim
