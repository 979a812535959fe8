#pragma once

// Reference computations written independently of the library: plain
// bisection on the defining equations and hand-derived Jacobians.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace oracle {

// Bisection to machine precision; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  if ((flo < 0.0) == (f(hi) < 0.0)) throw std::invalid_argument("bisect: no sign change");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Nonzero resource equilibria on an edge of constant extraction e (K = 1):
// roots of (R/A - 1)(1 - R) - e on (A, 1). The left side peaks at
// R = (1 + A)/2, so each root is bracketed on one side of the peak.
inline std::optional<std::pair<double, double>> edge_roots(double A, double e) {
  auto f = [A, e](double R) { return (R / A - 1.0) * (1.0 - R) - e; };
  const double peak = 0.5 * (1.0 + A);
  if (f(peak) < 0.0) return std::nullopt;
  return std::make_pair(bisect(f, A, peak), bisect(f, peak, 1.0));
}

// Interior knowledge-feedback equilibria: intersections of the strategy
// nullcline x = (1 - R)/(1 - A) with the resource nullcline
// (R/A - 1)(1 - R) = e_D - x (e_D - e_C), searched on (A, 1).
inline std::optional<std::pair<double, double>> kf_interior_roots(double A, double eC,
                                                                  double eD) {
  auto g = [=](double R) {
    const double x = (1.0 - R) / (1.0 - A);
    return (R / A - 1.0) * (1.0 - R) - (eD - x * (eD - eC));
  };
  // g is a downward parabola in R; its maximum is where g' = 0.
  // g'(R) = (1 + A - 2R)/A - (eD - eC)/(1 - A).
  const double peak = 0.5 * (1.0 + A - A * (eD - eC) / (1.0 - A));
  if (peak <= A || peak >= 1.0 || g(peak) <= 0.0) return std::nullopt;
  return std::make_pair(bisect(g, A, peak), bisect(g, peak, 1.0));
}

inline double kf_nullcline_x(double R, double A) { return (1.0 - R) / (1.0 - A); }

struct Jac {
  double a, b, c, d;  // [[dR'/dR, dR'/dx], [dx'/dR, dx'/dx]]
  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
};

// Allee resource drift with K = 1, differentiated by hand.
inline std::pair<double, double> resource_row(double R, double x, double T, double A, double eC,
                                              double eD) {
  const double extraction = x * eC + (1.0 - x) * eD;
  const double dR = T * ((R / A - 1.0) * (1.0 - R) + R * (1.0 - R) / A - R * (R / A - 1.0) -
                         extraction);
  const double dx = -T * R * (eC - eD);
  return {dR, dx};
}

inline Jac replicator_jacobian(double R, double x, double T, double A, double eC, double eD,
                               double w) {
  const auto [a, b] = resource_row(R, x, T, A, eC, eD);
  return {a, b, -w * x * (1.0 - x), -w * R * (1.0 - 2.0 * x)};
}

// Valid on the R > A branch.
inline Jac kf_jacobian(double R, double x, double T, double A, double eC, double eD) {
  const auto [a, b] = resource_row(R, x, T, A, eC, eD);
  return {a, b, -1.0 / (1.0 - A), -1.0};
}

}  // namespace oracle
