#include "nb/kernels.hpp"

#include <cmath>

namespace nb::kernels {

namespace {
bool g_force_scalar = false;

[[maybe_unused]] bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
}  // namespace

bool avx2_available() {
#ifdef NB_HAVE_AVX2_BUILD
  static const bool ok = cpu_has_avx2();
  return ok;
#else
  return false;
#endif
}

bool force_scalar(bool on) {
  bool prev = g_force_scalar;
  g_force_scalar = on;
  return prev;
}

std::string active() {
  return (!g_force_scalar && avx2_available()) ? "avx2" : "scalar";
}

double potential_alpha1_scalar(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                               double* per_point) {
  double total = 0;
  for (int i = 0; i < npts; ++i) {
    const Vec3& p = pts[i];
    double s = 0;
    for (const Mat3& M : mats) {
      double x = M.a[0] * p.x + M.a[1] * p.y + M.a[2] * p.z;
      double y = M.a[3] * p.x + M.a[4] * p.y + M.a[5] * p.z;
      double z = M.a[6] * p.x + M.a[7] * p.y + M.a[8] * p.z;
      s += 1.0 / std::sqrt(x * x + y * y + z * z);
    }
    if (per_point) per_point[i] = s;
    total += s;
  }
  return total;
}

void potential_grad_alpha1_scalar(const std::vector<Mat3>& mats, const Vec3* pts,
                                  int npts, Vec3* grads, double scale) {
  for (int i = 0; i < npts; ++i) {
    const Vec3& p = pts[i];
    Vec3 g{0, 0, 0};
    for (const Mat3& M : mats) {
      double x = M.a[0] * p.x + M.a[1] * p.y + M.a[2] * p.z;
      double y = M.a[3] * p.x + M.a[4] * p.y + M.a[5] * p.z;
      double z = M.a[6] * p.x + M.a[7] * p.y + M.a[8] * p.z;
      double r2 = x * x + y * y + z * z;
      double w = 1.0 / (r2 * std::sqrt(r2));
      // M^T (M p) scaled by -|Mp|^{-3}
      g.x -= w * (M.a[0] * x + M.a[3] * y + M.a[6] * z);
      g.y -= w * (M.a[1] * x + M.a[4] * y + M.a[7] * z);
      g.z -= w * (M.a[2] * x + M.a[5] * y + M.a[8] * z);
    }
    grads[i] = grads[i] + scale * g;
  }
}

double potential_alpha1(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                        double* per_point) {
#ifdef NB_HAVE_AVX2_BUILD
  if (!g_force_scalar && avx2_available())
    return potential_alpha1_avx2(mats, pts, npts, per_point);
#endif
  return potential_alpha1_scalar(mats, pts, npts, per_point);
}

void potential_grad_alpha1(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                           Vec3* grads, double scale) {
#ifdef NB_HAVE_AVX2_BUILD
  if (!g_force_scalar && avx2_available()) {
    potential_grad_alpha1_avx2(mats, pts, npts, grads, scale);
    return;
  }
#endif
  potential_grad_alpha1_scalar(mats, pts, npts, grads, scale);
}

}  // namespace nb::kernels
