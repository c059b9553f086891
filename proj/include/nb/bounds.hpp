#pragma once
// Collision level estimates (lower bounds for the action at total collisions).

#include <utility>

#include "nb/groups.hpp"

namespace nb {

// 3 (K^2 pi^2 / (2 (m1 + m2)))^{1/3} m1 m2 T^{1/3}.
double gordon_bound(double m1, double m2, double K, double T);

// Per-T^{1/3} total-collision level: a_R = 3N (pi^2 (N-1)^2 / 32)^{1/3}, or the
// improved a'_R = 3N (pi^2 c^2 / 8)^{1/3} with c the near-distance coefficient.
double total_collision_bound(GroupKind kind, bool improved);

// M total collisions per period scale the level by M^{2/3}.
double multi_collision_bound(double base, int M);

// (a_4 lower level, test-loop upper bound), both times T^{1/3}.
std::pair<double, double> k4_bounds(double T);

// rho minimizing the K4 test-loop action bound.
double k4_optimal_rho(double T);

}  // namespace nb
