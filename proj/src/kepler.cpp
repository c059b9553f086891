#include "nb/kepler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nb {

namespace {
// int_0^theta dphi/(1 + b cos phi), assuming 1 + b cos phi > 0 on [0, theta].
double orbit_int1(double theta, double b) {
  double u = std::tan(0.5 * theta);
  if (b < 1.0) {
    double r = std::sqrt((1.0 - b) / (1.0 + b));
    return 2.0 / std::sqrt(1.0 - b * b) * std::atan(r * u);
  }
  if (b > 1.0) {
    double r = std::sqrt((b - 1.0) / (b + 1.0));
    return 2.0 / std::sqrt(b * b - 1.0) * std::atanh(r * u);
  }
  return u;
}

// int_0^theta dphi/(1 + b cos phi)^2 via the standard reduction
//   I2 = b sin(theta) / ((b^2-1)(1 + b cos theta)) - I1/(b^2-1),
// with a tan-half-angle series fallback where b^2-1 cancels.
double orbit_int2(double theta, double b) {
  double bb1 = b * b - 1.0;
  if (std::fabs(b - 1.0) < 1e-9) {
    // Tan-half-angle form 2 int_0^u (1+w^2) dw / ((1+b)+(1-b)w^2)^2 expanded
    // around b = 1, valid while (1-b) u^2 stays small.
    double u = std::tan(0.5 * theta);
    double u2 = u * u;
    double s = u / 2.0 + u * u2 / 6.0;
    double ds = u / 2.0 - u * u2 * u2 / 10.0;  // coefficient of (1-b)
    return s + (1.0 - b) * ds;
  }
  double d = 1.0 + b * std::cos(theta);
  return b * std::sin(theta) / (bb1 * d) - orbit_int1(theta, b) / bb1;
}

// F(e) = int_0^theta dphi/(1 -+ e cos phi)^2 - (2^{1/2}/3)(1 -+ e cos theta)^{-3/2}.
double residual(double theta, double e, bool plus) {
  double s = plus ? 1.0 : -1.0;
  double lhs = orbit_int2(theta, s * e);
  double d = 1.0 + s * e * std::cos(theta);
  return lhs - std::sqrt(2.0) / 3.0 * std::pow(d, -1.5);
}
}  // namespace

double solve_eccentricity(double theta) {
  if (theta <= 0 || theta >= std::numbers::pi)
    throw std::invalid_argument("solve_eccentricity: theta in (0, pi)");
  bool plus = theta > kKeplerThreshold;
  double lo, hi;
  if (!plus) {
    lo = 0.0;
    hi = 1.0 - 1e-12;
  } else {
    lo = 1e-12;
    // Admissible window: e < -1/cos(theta) past pi/2, otherwise any e > 0.
    hi = std::cos(theta) < 0 ? -1.0 / std::cos(theta) - 1e-12 : 1e6;
  }
  // Bracket by grid scan (the residual is continuous inside the window).
  double flo = residual(theta, lo, plus);
  const int scan = 256;
  double a = lo, fa = flo, b = lo;
  bool bracketed = false;
  for (int i = 1; i <= scan; ++i) {
    b = lo + (hi - lo) * i / scan;
    double fb = residual(theta, b, plus);
    if (fa == 0 || fa * fb < 0) {
      bracketed = true;
      break;
    }
    a = b;
    fa = fb;
  }
  if (!bracketed) throw std::runtime_error("solve_eccentricity: no root in window");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (a + b);
    double fm = residual(theta, mid, plus);
    if (fa * fm <= 0)
      b = mid;
    else {
      a = mid;
      fa = fm;
    }
    if (b - a < 1e-14) break;
  }
  return 0.5 * (a + b);
}

double action_ratio_of(double theta, double e, bool plus_branch) {
  double s = plus_branch ? 1.0 : -1.0;
  double d = 1.0 + s * e * std::cos(theta);
  return 0.25 * (1.0 - e * e) / d +
         s * e * std::sin(theta) / (std::sqrt(2.0) * std::sqrt(d));
}

double action_ratio(double theta) {
  if (theta == 0) {
    // Limit value: branch minus, a = (1+e)/4 with e = e(0+).
    double e = solve_eccentricity(1e-6);
    return 0.25 * (1.0 + e);
  }
  double e = solve_eccentricity(theta);
  return action_ratio_of(theta, e, theta > kKeplerThreshold);
}

double parabolic_motion(double alpha_coef, double t) {
  if (t < 0) throw std::invalid_argument("parabolic_motion: t >= 0");
  return 0.5 * std::pow(3.0, 2.0 / 3.0) * std::cbrt(alpha_coef) *
         std::pow(t, 2.0 / 3.0);
}

EllPoint ell_curve_point(double eta) {
  EllPoint p;
  p.eta = eta;
  p.e = std::sqrt(1.0 + (1.0 + eta) * (1.0 + eta));
  p.theta = std::acos(eta / p.e);
  p.a = action_ratio_of(p.theta, p.e, true);
  return p;
}

std::vector<RatioSample> ratio_scan(int grid, double margin) {
  std::vector<RatioSample> out;
  out.reserve(grid);
  double hi = std::numbers::pi - margin;
  for (int i = 1; i <= grid; ++i) {
    double th = hi * i / grid;
    RatioSample s;
    s.theta = th;
    s.e = solve_eccentricity(th);
    s.a = action_ratio_of(th, s.e, th > kKeplerThreshold);
    out.push_back(s);
  }
  return out;
}

}  // namespace nb
