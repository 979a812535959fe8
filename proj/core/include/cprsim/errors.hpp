#pragma once

#include <stdexcept>
#include <string>

namespace cprsim {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model parameter lies outside its admissible domain. `field()` names the
// offending parameter (e.g. "A", "e_C_hat").
class ParamDomainError : public Error {
 public:
  ParamDomainError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Numerical failure: an integrator stage produced NaN or infinity.
class NonFiniteState : public Error {
 public:
  using Error::Error;
};

// A finite-difference stencil straddles the R = A discontinuity of the
// knowledge-feedback field.
class BranchCrossingError : public Error {
 public:
  using Error::Error;
};

// A closed-form knowledge-feedback equilibrium fell outside the region in
// which the formula is valid.
class ExistenceRegionMismatch : public Error {
 public:
  using Error::Error;
};

// Newton polishing of a closed-form equilibrium did not converge.
class RefinementFailure : public Error {
 public:
  using Error::Error;
};

// The replicator critical line needs s_C- and s_D-, and one is missing.
class NoBoundary : public Error {
 public:
  using Error::Error;
};

// Two region maps were compared over different axes.
class AxisMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace cprsim
