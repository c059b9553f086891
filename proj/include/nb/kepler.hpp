#pragma once
// Keplerian-arc action ratio for the symmetric partial-collision comparison.

#include <vector>

namespace nb {

// Threshold angle separating the apocenter (-) and pericenter (+) branches.
inline constexpr double kKeplerThreshold = 0.4714045207910317;  // 2^{1/2}/3

// Eccentricity solving int_0^theta dphi/(1 -+ e cos phi)^2 =
// (2^{1/2}/3)(1 -+ e cos theta)^{-3/2} inside the admissible window.
double solve_eccentricity(double theta);

// Ratio a = A / A0 of the Keplerian arc action to the parabolic pair.
double action_ratio(double theta);
// The ratio for explicitly given (theta, e) on the given branch.
double action_ratio_of(double theta, double e, bool plus_branch);

// Parabolic ejection motion s^alpha(t) = (3^{2/3}/2) alpha^{1/3} t^{2/3}.
double parabolic_motion(double alpha_coef, double t);

// Points (eta, e, theta, a) on the critical curve ell: e = sqrt(1 + (1+eta)^2).
struct EllPoint {
  double eta, e, theta, a;
};
EllPoint ell_curve_point(double eta);

struct RatioSample {
  double theta, e, a;
};
// Uniform theta grid scan over (0, pi - margin]; reports all samples.
std::vector<RatioSample> ratio_scan(int grid, double margin = 1e-3);

}  // namespace nb
