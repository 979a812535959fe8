#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "cprsim/errors.hpp"
#include "cprsim/model.hpp"

namespace cprsim {

using Matrix2 = std::array<std::array<double, 2>, 2>;  // row-major, (R, x) order
using EigenPair = std::array<std::complex<double>, 2>;

enum class FixedPointLabel {
  S0, S00, S01, SCminus, SCplus, SDminus, SDplus,  // replicator
  KF_S0, KF_minus, KF_plus,                        // knowledge feedback
};

enum class Stability { Stable, Unstable, Saddle, NeutralLine, NotApplicable };

std::string_view to_string(FixedPointLabel label) noexcept;
std::string_view to_string(Stability stability) noexcept;

// Real parts or determinants closer to zero than this are treated as zero.
inline constexpr double kStabilityTolerance = 1e-8;

struct FixedPoint {
  State location;
  FixedPointLabel label = FixedPointLabel::S0;
  EigenPair eigenvalues{};
  Stability stability = Stability::NotApplicable;
  double residual = 0.0;            // max |rhs| at the location
  bool coop_fraction_free = false;  // true for the S0 line; location.x is a representative
};

double trace(const Matrix2& m) noexcept;
double determinant(const Matrix2& m) noexcept;
EigenPair eigenvalues(const Matrix2& m) noexcept;

// Central differences of an arbitrary planar field `field(State) -> Rates`.
template <class Field>
Matrix2 central_difference_jacobian(Field&& field, const State& s, double h) {
  const Rates rp = field(State{s.resource + h, s.coop_fraction});
  const Rates rm = field(State{s.resource - h, s.coop_fraction});
  const Rates xp = field(State{s.resource, s.coop_fraction + h});
  const Rates xm = field(State{s.resource, s.coop_fraction - h});
  const double inv = 1.0 / (2.0 * h);
  return {{{(rp.resource - rm.resource) * inv, (xp.resource - xm.resource) * inv},
           {(rp.coop_fraction - rm.coop_fraction) * inv, (xp.coop_fraction - xm.coop_fraction) * inv}}};
}

// Jacobian of coevolution_rhs. For knowledge feedback the stencil must stay
// on one side of R = A, otherwise BranchCrossingError.
Matrix2 numeric_jacobian(const State& state, const System& system, double h = 1e-6);

// Det/Tr test: Det < 0 saddle; Det > 0 with Tr < 0 stable, Tr > 0 unstable.
Stability classify_det_trace(const Matrix2& jacobian) noexcept;
// Same verdicts read from eigenvalue real parts.
Stability classify_eigenvalues(const EigenPair& eig) noexcept;
// Points on an invariant edge: any growing direction makes them Unstable.
Stability classify_edge(const EigenPair& eig) noexcept;

// Roots of (R/A - 1)(1 - R) = e, i.e. R = (1 + A -/+ sqrt((1-A)^2 - 4Ae)) / 2.
struct EdgeRoots {
  double lower;
  double upper;
};
std::optional<EdgeRoots> edge_equilibria(double allee, double extraction) noexcept;

// s0 (as one NeutralLine entry), s00, s01 and whichever of s_C-/+ and s_D-/+
// exist. Each point is Newton-polished and classified numerically.
std::vector<FixedPoint> replicator_fixed_points(const ValidatedParams& params);

// KF_S0 plus, inside the existence region, both closed-form interior points.
// Throws ExistenceRegionMismatch if a closed-form point has R <= A or leaves
// the unit square while the existence predicate holds.
std::vector<FixedPoint> knowledge_fixed_points(const ValidatedParams& params);

// Closed-form eigenvalues of the replicator equilibria (with e_D in the
// s_D branch). Cross-check only; `coop_fraction` is used for S0.
EigenPair closed_form_eigenvalues(FixedPointLabel label, const ModelParams& params,
                                  double coop_fraction = 0.5);

struct BistabilityReport {
  bool bistable = false;
  std::vector<FixedPoint> existing_points;
  double threshold_value = 0.0;  // largest e_D_hat admitting bi-stability
};

// (1 - A)^2 / (4A)
double replicator_threshold(double allee) noexcept;
bool replicator_bistable_condition(double allee, double defect_extraction) noexcept;

// ((1 - A)/sqrt(A) - sqrt(e_C))^2, the e_D bound from the first condition.
double knowledge_threshold(double allee, double coop_extraction) noexcept;
// Two-branch existence condition for the interior equilibria.
bool knowledge_bistable_condition(double allee, double coop_extraction,
                                  double defect_extraction) noexcept;

BistabilityReport replicator_bistable(const ValidatedParams& params);
BistabilityReport knowledge_bistable(const ValidatedParams& params);

// Boundary x0 of the straight critical line through s_C- (x = 1) and s_D-
// (x = 0). May fall outside [0, 1]. Throws NoBoundary unless bistable.
double critical_line_x0(double initial_resource, const ValidatedParams& params);
// Inverse: the R0 at which the line crosses a given x0.
double critical_line_r0(double initial_coop, const ValidatedParams& params);
// True when (R0, x0) lies on the sustainable side of the critical line.
bool predicts_sustainable(const State& initial, const ValidatedParams& params);

}  // namespace cprsim
