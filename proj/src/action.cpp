#include "nb/action.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "nb/kernels.hpp"
#include "nb/quadrature.hpp"

namespace nb {

ActionBreakdown action(const GeneratingLoop& u, double alpha, double min_dist_floor) {
  int m = u.m();
  double dt = u.dt();
  double half_n = 0.5 * u.N;
  ActionBreakdown b;
  b.alpha = alpha;
  double k = 0;
  for (int i = 0; i < m; ++i) {
    Vec3 d = u.pts[(i + 1) % m] - u.pts[i];
    k += norm2(d);
  }
  // (N/2) dt sum |(u+ - u)/dt|^2; forward differences have no null modes, so
  // descent cannot excite grid-frequency oscillations.
  b.kinetic = half_n / dt * k;

  double pot = 0;
  if (alpha == 1.0) {
    pot = kernels::potential_alpha1(u.mats, u.pts.data(), m, nullptr);
    // Collision screen: the kernel has no floor, check separately.
    for (int i = 0; i < m; ++i)
      for (const Mat3& M : u.mats)
        if (norm(M * u.pts[i]) < min_dist_floor)
          throw std::runtime_error("action: collision on grid at sample " +
                                   std::to_string(i));
  } else {
    for (int i = 0; i < m; ++i)
      for (const Mat3& M : u.mats) {
        double r = norm(M * u.pts[i]);
        if (r < min_dist_floor)
          throw std::runtime_error("action: collision on grid at sample " +
                                   std::to_string(i));
        pot += std::pow(r, -alpha);
      }
  }
  b.potential = half_n * dt * pot;
  b.total = b.kinetic + b.potential;
  auto [l, s] = optimal_scaling(b);
  b.lambdaStar = l;
  b.scaledMin = s;
  return b;
}

std::pair<double, double> optimal_scaling(const ActionBreakdown& b) {
  if (b.kinetic <= 0) throw std::invalid_argument("optimal_scaling: zero kinetic part");
  double l = std::cbrt(b.potential / (2.0 * b.kinetic));
  double s = 3.0 * std::cbrt(b.kinetic * b.potential * b.potential / 4.0);
  return {l, s};
}

GeneratingLoop scale_loop(const GeneratingLoop& u, double lambda) {
  GeneratingLoop v = u;
  for (Vec3& p : v.pts) p *= lambda;
  return v;
}

double upsilon(GroupKind kind, int i) {
  if (i != 1 && i != 2) throw std::invalid_argument("upsilon: i must be 1 or 2");
  static std::map<std::pair<GroupKind, int>, double> cache;
  auto key = std::make_pair(kind, i);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RotationGroup g = build_rotation_group(kind);
  ArchimedeanPolyhedron p = build_qr(g);
  const Vec3& qi = i == 1 ? p.q1 : p.q2;
  std::vector<Mat3> mats;
  for (const Rotation3& r : g.elements)
    if (!r.identity) mats.push_back(r.matrix - identity3());
  double val = integrate(
      [&](double s) {
        Vec3 x = (1 - s) * p.q + s * qi;
        double sum = 0;
        for (const Mat3& M : mats) sum += 1.0 / norm(M * x);
        return sum;
      },
      0.0, 1.0, 1e-10);
  cache[key] = val;
  return val;
}

double analytic_action_value(GroupKind kind, int N1, int N2, double T) {
  RotationGroup g = build_rotation_group(kind);
  ArchimedeanPolyhedron p = build_qr(g);
  double u = N1 * upsilon(kind, 1) + N2 * upsilon(kind, 2);
  return 1.5 / std::cbrt(4.0) * g.order * std::cbrt(p.ell * p.ell) *
         std::cbrt(u * u) * std::cbrt(T);
}

double analytic_test_action(const ArchimedeanPolyhedron& p, const std::vector<int>& nu,
                            int n, double T) {
  NuCheck chk = validate_nu(p, nu, n);
  if (!chk.ok) throw std::invalid_argument("analytic_test_action: " + chk.violation);
  int K = static_cast<int>(nu.size());
  int N1 = 0, N2 = 0;
  for (int k = 0; k < K; ++k)
    (p.edge_class(nu[k], nu[(k + 1) % K]) == 1 ? N1 : N2) += 1;
  return analytic_action_value(p.kind, n * N1, n * N2, T);
}

}  // namespace nb
