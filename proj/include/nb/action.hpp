#pragma once
// Reduced action functional, optimal homothety scaling, edge integrals.

#include <utility>

#include "nb/archimedean.hpp"
#include "nb/groups.hpp"
#include "nb/loops.hpp"

namespace nb {

struct ActionBreakdown {
  double kinetic = 0;
  double potential = 0;
  double total = 0;
  double alpha = 1;
  double lambdaStar = 0;
  double scaledMin = 0;
};

// Discrete action: central-difference velocities, trapezoid (= rectangle on the
// periodic uniform grid) quadrature. Throws on a grid collision.
ActionBreakdown action(const GeneratingLoop& u, double alpha = 1.0,
                       double min_dist_floor = 1e-12);

// lambda* = (A_U / 2A_K)^{1/3} and the scaled minimum 3 (A_K A_U^2 / 4)^{1/3}.
std::pair<double, double> optimal_scaling(const ActionBreakdown& b);

// Rescale positions by lambda (period unchanged).
GeneratingLoop scale_loop(const GeneratingLoop& u, double lambda);

// Edge integral upsilon_i = int_0^1 sum_{R != I} |(R-I)((1-s) q + s q_i)|^{-1} ds.
double upsilon(GroupKind kind, int i);

// Closed-form minimum action of the homothety family lambda v^(nu,n):
// (3 / (2 * 4^{1/3})) N ell^{2/3} (N1 u1 + N2 u2)^{2/3} T^{1/3}.
double analytic_test_action(const ArchimedeanPolyhedron& p, const std::vector<int>& nu,
                            int n, double T);
// Same closed form from precomputed invariants.
double analytic_action_value(GroupKind kind, int N1, int N2, double T);

}  // namespace nb
