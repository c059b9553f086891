#pragma once
// Adaptive Gauss-Kronrod (15/7) quadrature.

#include <cmath>
#include <functional>

namespace nb {

namespace detail {
// Kronrod-15 nodes on [-1,1] (symmetric) with Kronrod and embedded Gauss-7 weights.
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

inline void gk15(const std::function<double(double)>& f, double a, double b,
                 double& result, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resg = 0, resk = 0;
  double fc = f(c);
  resk = kWgk[7] * fc;
  resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  result = resk * h;
  err = std::fabs((resk - resg) * h);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abstol = 1e-10, int depth = 0, double reltol = 1e-13) {
  double r, e;
  detail::gk15(f, a, b, r, e);
  if (e < abstol + reltol * std::fabs(r) || depth > 40) return r;
  double c = 0.5 * (a + b);
  return integrate(f, a, c, abstol * 0.5, depth + 1, reltol) +
         integrate(f, c, b, abstol * 0.5, depth + 1, reltol);
}

}  // namespace nb
