#include "nb/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nb {

namespace {
constexpr double kPi = std::numbers::pi;

int group_order(GroupKind k) {
  switch (k) {
    case GroupKind::T: return 12;
    case GroupKind::O: return 24;
    default: return 60;
  }
}

// Sum over the neighbors of a vertex of Q_R of the reciprocal chord distances,
// grouped by incident face: triangles contribute 1/sqrt(3) per vertex pair, a
// p-gon contributes 1/(2 sin(pi/p)) per side and the diagonals accordingly.
double improved_coefficient(GroupKind k) {
  switch (k) {
    case GroupKind::T:
      return 1.5 + 8.0 / std::sqrt(3.0);
    case GroupKind::O:
      return 4.5 + 6.0 / std::sqrt(2.0) + 8.0 / std::sqrt(3.0);
    default:
      return 7.5 + 12.0 / (2.0 * std::sin(kPi / 5)) +
             12.0 / (2.0 * std::cos(kPi / 10)) + 20.0 / std::sqrt(3.0);
  }
}
}  // namespace

double gordon_bound(double m1, double m2, double K, double T) {
  if (m1 <= 0 || m2 <= 0 || K <= 0 || T <= 0)
    throw std::invalid_argument("gordon_bound: positive inputs required");
  return 3.0 * std::cbrt(K * K * kPi * kPi / (2.0 * (m1 + m2))) * m1 * m2 * std::cbrt(T);
}

double total_collision_bound(GroupKind kind, bool improved) {
  double n = group_order(kind);
  if (!improved) return 3.0 * n * std::cbrt(kPi * kPi * (n - 1) * (n - 1) / 32.0);
  double c = improved_coefficient(kind);
  return 3.0 * n * std::cbrt(kPi * kPi * c * c / 8.0);
}

double multi_collision_bound(double base, int M) {
  if (M < 1) throw std::invalid_argument("multi_collision_bound: M >= 1");
  return std::cbrt(static_cast<double>(M) * M) * base;
}

std::pair<double, double> k4_bounds(double T) {
  if (T <= 0) throw std::invalid_argument("k4_bounds: T > 0");
  double p23 = std::pow(kPi, 2.0 / 3.0);
  double lower = 18.0 / std::cbrt(2.0) * p23 * std::cbrt(T);
  double upper = 18.0 / std::cbrt(3.0) * p23 * std::cbrt(T);
  if (!(upper < lower)) throw std::logic_error("k4_bounds: ordering violated");
  return {lower, upper};
}

double k4_optimal_rho(double T) {
  return std::cbrt(3.0 * T * T / (64.0 * kPi * kPi));
}

}  // namespace nb
