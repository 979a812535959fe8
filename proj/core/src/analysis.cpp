#include "cprsim/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cprsim {

namespace {

constexpr int kMaxNewtonIterations = 10;
constexpr double kResidualLimit = 1e-9;

void require_normalized(const ModelParams& p) {
  if (p.carrying_capacity != 1.0)
    throw ParamDomainError("K", "closed-form equilibria assume K = 1");
}

System allee_system(const ValidatedParams& params, StrategyRule rule) {
  return System{params, GrowthKind::AlleeLogistic, rule};
}

// Polishes a root of q(R) = (R/A - 1)(1 - R) - e, the per-capita resource
// drift on the x = 0 / x = 1 edges.
double polish_edge_root(double r, double allee, double extraction) {
  for (int i = 0; i < kMaxNewtonIterations; ++i) {
    const double q = (r / allee - 1.0) * (1.0 - r) - extraction;
    const double dq = (1.0 + allee - 2.0 * r) / allee;
    if (q == 0.0 || dq == 0.0) break;
    const double next = r - q / dq;
    if (next == r) break;
    r = next;
  }
  return r;
}

// On the R > A branch of knowledge feedback, x = (1 - R)/(1 - A) and the
// per-capita resource drift becomes a quadratic in R.
double polish_knowledge_root(double r, const ModelParams& p) {
  const double a = p.allee_threshold;
  const double gap = p.defect_extraction - p.coop_extraction;
  for (int i = 0; i < kMaxNewtonIterations; ++i) {
    const double g = (r / a - 1.0) * (1.0 - r) - p.defect_extraction + (1.0 - r) * gap / (1.0 - a);
    const double dg = (1.0 + a - 2.0 * r) / a - gap / (1.0 - a);
    if (g == 0.0 || dg == 0.0) break;
    const double next = r - g / dg;
    if (next == r) break;
    r = next;
  }
  return r;
}

enum class Placement { OnNeutralLine, OnEdge, Interior };

FixedPoint make_point(const State& at, FixedPointLabel label, const System& system,
                      Placement placement) {
  FixedPoint fp;
  fp.location = at;
  fp.label = label;
  fp.residual = coevolution_rhs(at, system).max_norm();
  if (!(fp.residual < kResidualLimit)) {
    throw RefinementFailure("equilibrium " + std::string(to_string(label)) +
                            " did not polish: residual " + std::to_string(fp.residual));
  }
  const Matrix2 jac = numeric_jacobian(at, system);
  fp.eigenvalues = eigenvalues(jac);
  switch (placement) {
    case Placement::OnNeutralLine: fp.stability = Stability::NeutralLine; break;
    case Placement::OnEdge: fp.stability = classify_edge(fp.eigenvalues); break;
    case Placement::Interior: fp.stability = classify_det_trace(jac); break;
  }
  return fp;
}

struct KnowledgeClosedForm {
  double discriminant;
  State minus;
  State plus;
};

KnowledgeClosedForm knowledge_closed_form(const ModelParams& p) {
  const double a = p.allee_threshold, ec = p.coop_extraction, ed = p.defect_extraction;
  const double lead = a * a - a * (ec + 2.0) + 1.0;
  const double disc = lead * lead + a * a * ed * ed - 2.0 * a * ed * (a * (a + ec - 2.0) + 1.0);
  const double root = std::sqrt(std::max(disc, 0.0));
  const double r_num = -1.0 + a * (a - ec + ed);
  const double x_num = 1.0 + a * (a - ec + ed - 2.0);
  const double r_den = 2.0 * (a - 1.0);
  const double x_den = 2.0 * (a - 1.0) * (a - 1.0);
  return {disc,
          {(r_num - root) / r_den, (x_num - root) / x_den},
          {(r_num + root) / r_den, (x_num + root) / x_den}};
}

}  // namespace

std::string_view to_string(FixedPointLabel label) noexcept {
  switch (label) {
    case FixedPointLabel::S0: return "S0";
    case FixedPointLabel::S00: return "S00";
    case FixedPointLabel::S01: return "S01";
    case FixedPointLabel::SCminus: return "SCminus";
    case FixedPointLabel::SCplus: return "SCplus";
    case FixedPointLabel::SDminus: return "SDminus";
    case FixedPointLabel::SDplus: return "SDplus";
    case FixedPointLabel::KF_S0: return "KF_S0";
    case FixedPointLabel::KF_minus: return "KF_minus";
    case FixedPointLabel::KF_plus: return "KF_plus";
  }
  return "?";
}

std::string_view to_string(Stability stability) noexcept {
  switch (stability) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::Saddle: return "Saddle";
    case Stability::NeutralLine: return "NeutralLine";
    case Stability::NotApplicable: return "NotApplicable";
  }
  return "?";
}

double trace(const Matrix2& m) noexcept { return m[0][0] + m[1][1]; }

double determinant(const Matrix2& m) noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

EigenPair eigenvalues(const Matrix2& m) noexcept {
  const double half_tr = 0.5 * trace(m);
  const double disc = half_tr * half_tr - determinant(m);
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Larger-magnitude root first, the other from the product to avoid cancellation.
    const double big = half_tr >= 0.0 ? half_tr + s : half_tr - s;
    const double small = big != 0.0 ? determinant(m) / big : 0.0;
    return {std::complex<double>(std::min(big, small)), std::complex<double>(std::max(big, small))};
  }
  const double s = std::sqrt(-disc);
  return {std::complex<double>(half_tr, -s), std::complex<double>(half_tr, s)};
}

Matrix2 numeric_jacobian(const State& state, const System& system, double h) {
  if (system.rule == StrategyRule::KnowledgeFeedback &&
      std::abs(state.resource - system.params->allee_threshold) <= h) {
    throw BranchCrossingError("Jacobian stencil straddles R = A at R=" +
                              std::to_string(state.resource));
  }
  return central_difference_jacobian([&](const State& s) { return coevolution_rhs(s, system); },
                                     state, h);
}

Stability classify_det_trace(const Matrix2& j) noexcept {
  const double det = determinant(j), tr = trace(j);
  if (det < -kStabilityTolerance) return Stability::Saddle;
  if (det > kStabilityTolerance) {
    if (tr < -kStabilityTolerance) return Stability::Stable;
    if (tr > kStabilityTolerance) return Stability::Unstable;
  }
  return Stability::NotApplicable;
}

Stability classify_eigenvalues(const EigenPair& eig) noexcept {
  const double a = eig[0].real(), b = eig[1].real();
  const bool a_neg = a < -kStabilityTolerance, a_pos = a > kStabilityTolerance;
  const bool b_neg = b < -kStabilityTolerance, b_pos = b > kStabilityTolerance;
  if (a_neg && b_neg) return Stability::Stable;
  if (a_pos && b_pos) return Stability::Unstable;
  if ((a_neg && b_pos) || (a_pos && b_neg)) return Stability::Saddle;
  return Stability::NotApplicable;
}

Stability classify_edge(const EigenPair& eig) noexcept {
  const double a = eig[0].real(), b = eig[1].real();
  if (a > kStabilityTolerance || b > kStabilityTolerance) return Stability::Unstable;
  if (a < -kStabilityTolerance && b < -kStabilityTolerance) return Stability::Stable;
  return Stability::NotApplicable;
}

std::optional<EdgeRoots> edge_equilibria(double allee, double extraction) noexcept {
  const double disc = (1.0 - allee) * (1.0 - allee) - 4.0 * allee * extraction;
  if (!(disc >= 0.0)) return std::nullopt;
  const double s = std::sqrt(disc);
  return EdgeRoots{0.5 * (1.0 + allee - s), 0.5 * (1.0 + allee + s)};
}

std::vector<FixedPoint> replicator_fixed_points(const ValidatedParams& params) {
  const ModelParams& p = params;
  require_normalized(p);
  const System system = allee_system(params, StrategyRule::Replicator);

  std::vector<FixedPoint> out;
  FixedPoint line = make_point({0.0, 0.5}, FixedPointLabel::S0, system, Placement::OnNeutralLine);
  line.coop_fraction_free = true;
  out.push_back(line);
  out.push_back(make_point({0.0, 0.0}, FixedPointLabel::S00, system, Placement::OnNeutralLine));
  out.push_back(make_point({0.0, 1.0}, FixedPointLabel::S01, system, Placement::OnNeutralLine));

  auto add_edge = [&](double extraction, double x, FixedPointLabel lower, FixedPointLabel upper) {
    const auto roots = edge_equilibria(p.allee_threshold, extraction);
    if (!roots) return;
    const double lo = polish_edge_root(roots->lower, p.allee_threshold, extraction);
    const double hi = polish_edge_root(roots->upper, p.allee_threshold, extraction);
    out.push_back(make_point({lo, x}, lower, system, Placement::OnEdge));
    out.push_back(make_point({hi, x}, upper, system, Placement::OnEdge));
  };
  add_edge(p.coop_extraction, 1.0, FixedPointLabel::SCminus, FixedPointLabel::SCplus);
  add_edge(p.defect_extraction, 0.0, FixedPointLabel::SDminus, FixedPointLabel::SDplus);
  return out;
}

std::vector<FixedPoint> knowledge_fixed_points(const ValidatedParams& params) {
  const ModelParams& p = params;
  require_normalized(p);
  const System system = allee_system(params, StrategyRule::KnowledgeFeedback);

  std::vector<FixedPoint> out;
  out.push_back(make_point({0.0, 1.0}, FixedPointLabel::KF_S0, system, Placement::OnEdge));
  if (!knowledge_bistable_condition(p.allee_threshold, p.coop_extraction, p.defect_extraction))
    return out;

  const KnowledgeClosedForm cf = knowledge_closed_form(p);
  const double a = p.allee_threshold;
  auto add_interior = [&](State guess, FixedPointLabel label) {
    if (cf.discriminant < -1e-12 || !(guess.resource > a) || guess.resource > 1.0 ||
        guess.coop_fraction < 0.0 || guess.coop_fraction > 1.0) {
      throw ExistenceRegionMismatch("closed-form " + std::string(to_string(label)) +
                                    " at R=" + std::to_string(guess.resource) +
                                    ", x=" + std::to_string(guess.coop_fraction) +
                                    " lies outside its validity region");
    }
    const double r = polish_knowledge_root(guess.resource, p);
    if (!(r > a)) {
      throw ExistenceRegionMismatch("polished " + std::string(to_string(label)) +
                                    " crossed R = A");
    }
    const State at{r, (1.0 - r) / (1.0 - a)};
    out.push_back(make_point(at, label, system, Placement::Interior));
  };
  add_interior(cf.minus, FixedPointLabel::KF_minus);
  add_interior(cf.plus, FixedPointLabel::KF_plus);
  return out;
}

EigenPair closed_form_eigenvalues(FixedPointLabel label, const ModelParams& p,
                                  double coop_fraction) {
  using C = std::complex<double>;
  const double t = p.growth_rate, a = p.allee_threshold, w = p.greed;
  const double ec = p.coop_extraction, ed = p.defect_extraction;
  auto edge = [&](double extraction, bool upper, double sign_x) -> EigenPair {
    const double d = (1.0 - a) * (1.0 - a) - 4.0 * a * extraction;
    if (d < 0.0) throw std::invalid_argument("equilibrium does not exist");
    const double s = std::sqrt(d);
    const double pm = upper ? -1.0 : 1.0;  // lambda_1 carries +/- where R carries -/+
    const double first = t / (2.0 * a) * (-d + pm * (1.0 + a) * s);
    const double second = sign_x * 0.5 * w * (1.0 + a - pm * s);
    return {C(first), C(second)};
  };
  switch (label) {
    case FixedPointLabel::S0:
      return {C(0.0), C(-t * (1.0 + ed * (1.0 - coop_fraction) + ec * coop_fraction))};
    case FixedPointLabel::S00: return {C(-t * (1.0 + ed)), C(0.0)};
    case FixedPointLabel::S01: return {C(-t * (1.0 + ec)), C(0.0)};
    case FixedPointLabel::SCminus: return edge(ec, false, 1.0);
    case FixedPointLabel::SCplus: return edge(ec, true, 1.0);
    case FixedPointLabel::SDminus: return edge(ed, false, -1.0);
    case FixedPointLabel::SDplus: return edge(ed, true, -1.0);
    default: break;
  }
  throw std::invalid_argument("no closed-form eigenvalues for " + std::string(to_string(label)));
}

double replicator_threshold(double allee) noexcept {
  return (1.0 - allee) * (1.0 - allee) / (4.0 * allee);
}

bool replicator_bistable_condition(double allee, double defect_extraction) noexcept {
  return allee > 0.0 && defect_extraction < replicator_threshold(allee);
}

double knowledge_threshold(double allee, double coop_extraction) noexcept {
  const double d = (1.0 - allee) / std::sqrt(allee) - std::sqrt(coop_extraction);
  return d * d;
}

bool knowledge_bistable_condition(double a, double ec, double ed) noexcept {
  if (!(a > 0.0)) return false;
  const double lower_split = 3.0 - 2.0 * std::sqrt(2.0);
  const double upper_split = 0.5 * (3.0 - std::sqrt(5.0));
  const double first = 2.0 * std::sqrt((a - 1.0) * (a - 1.0) * ec / a) - a - 1.0 / a - ec + ed + 2.0;
  const double second = -a + 2.0 * std::sqrt((a - 1.0) * (a - 1.0) / a) - 1.0 / a + ec + 1.0;
  return (a < lower_split && first < 0.0) ||
         (lower_split < a && a < upper_split && first < 0.0 && second < 0.0);
}

BistabilityReport replicator_bistable(const ValidatedParams& params) {
  const ModelParams& p = params;
  return {replicator_bistable_condition(p.allee_threshold, p.defect_extraction),
          replicator_fixed_points(params), replicator_threshold(p.allee_threshold)};
}

BistabilityReport knowledge_bistable(const ValidatedParams& params) {
  const ModelParams& p = params;
  return {knowledge_bistable_condition(p.allee_threshold, p.coop_extraction, p.defect_extraction),
          knowledge_fixed_points(params), knowledge_threshold(p.allee_threshold, p.coop_extraction)};
}

namespace {

struct LineAnchors {
  double coop_minus;    // (s_C-)_R, where the line meets x = 1
  double defect_minus;  // (s_D-)_R, where the line meets x = 0
};

LineAnchors line_anchors(const ValidatedParams& params) {
  const ModelParams& p = params;
  if (!replicator_bistable_condition(p.allee_threshold, p.defect_extraction))
    throw NoBoundary("critical line needs bi-stability (e_D_hat < (1-A)^2/(4A))");
  const auto coop = edge_equilibria(p.allee_threshold, p.coop_extraction);
  const auto defect = edge_equilibria(p.allee_threshold, p.defect_extraction);
  if (!coop || !defect) throw NoBoundary("critical line needs both s_C- and s_D-");
  return {coop->lower, defect->lower};
}

}  // namespace

double critical_line_x0(double initial_resource, const ValidatedParams& params) {
  const LineAnchors l = line_anchors(params);
  return (initial_resource - l.defect_minus) / (l.coop_minus - l.defect_minus);
}

double critical_line_r0(double initial_coop, const ValidatedParams& params) {
  const LineAnchors l = line_anchors(params);
  return l.defect_minus + initial_coop * (l.coop_minus - l.defect_minus);
}

bool predicts_sustainable(const State& initial, const ValidatedParams& params) {
  return initial.resource > critical_line_r0(initial.coop_fraction, params);
}

}  // namespace cprsim
