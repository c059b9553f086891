#include <immintrin.h>

#include "nb/kernels.hpp"

// Built with -mavx2 -mfma; only dispatched to after a runtime CPU check.

namespace nb::kernels {

namespace {
// Gather x/y/z lanes of 4 consecutive Vec3 (AoS -> SoA).
inline void load4(const Vec3* p, __m256d& x, __m256d& y, __m256d& z) {
  x = _mm256_set_pd(p[3].x, p[2].x, p[1].x, p[0].x);
  y = _mm256_set_pd(p[3].y, p[2].y, p[1].y, p[0].y);
  z = _mm256_set_pd(p[3].z, p[2].z, p[1].z, p[0].z);
}
}  // namespace

double potential_alpha1_avx2(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                             double* per_point) {
  double total = 0;
  int i = 0;
  for (; i + 4 <= npts; i += 4) {
    __m256d px, py, pz;
    load4(pts + i, px, py, pz);
    __m256d acc = _mm256_setzero_pd();
    for (const Mat3& M : mats) {
      __m256d x = _mm256_fmadd_pd(_mm256_set1_pd(M.a[2]), pz,
                  _mm256_fmadd_pd(_mm256_set1_pd(M.a[1]), py,
                  _mm256_mul_pd(_mm256_set1_pd(M.a[0]), px)));
      __m256d y = _mm256_fmadd_pd(_mm256_set1_pd(M.a[5]), pz,
                  _mm256_fmadd_pd(_mm256_set1_pd(M.a[4]), py,
                  _mm256_mul_pd(_mm256_set1_pd(M.a[3]), px)));
      __m256d z = _mm256_fmadd_pd(_mm256_set1_pd(M.a[8]), pz,
                  _mm256_fmadd_pd(_mm256_set1_pd(M.a[7]), py,
                  _mm256_mul_pd(_mm256_set1_pd(M.a[6]), px)));
      __m256d r2 = _mm256_fmadd_pd(z, z, _mm256_fmadd_pd(y, y, _mm256_mul_pd(x, x)));
      acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_sqrt_pd(r2)));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (int k = 0; k < 4; ++k) {
      if (per_point) per_point[i + k] = lane[k];
      total += lane[k];
    }
  }
  if (i < npts) total += potential_alpha1_scalar(mats, pts + i, npts - i,
                                                 per_point ? per_point + i : nullptr);
  return total;
}

void potential_grad_alpha1_avx2(const std::vector<Mat3>& mats, const Vec3* pts,
                                int npts, Vec3* grads, double scale) {
  int i = 0;
  for (; i + 4 <= npts; i += 4) {
    __m256d px, py, pz;
    load4(pts + i, px, py, pz);
    __m256d gx = _mm256_setzero_pd(), gy = _mm256_setzero_pd(), gz = _mm256_setzero_pd();
    for (const Mat3& M : mats) {
      __m256d x = _mm256_fmadd_pd(_mm256_set1_pd(M.a[2]), pz,
                  _mm256_fmadd_pd(_mm256_set1_pd(M.a[1]), py,
                  _mm256_mul_pd(_mm256_set1_pd(M.a[0]), px)));
      __m256d y = _mm256_fmadd_pd(_mm256_set1_pd(M.a[5]), pz,
                  _mm256_fmadd_pd(_mm256_set1_pd(M.a[4]), py,
                  _mm256_mul_pd(_mm256_set1_pd(M.a[3]), px)));
      __m256d z = _mm256_fmadd_pd(_mm256_set1_pd(M.a[8]), pz,
                  _mm256_fmadd_pd(_mm256_set1_pd(M.a[7]), py,
                  _mm256_mul_pd(_mm256_set1_pd(M.a[6]), px)));
      __m256d r2 = _mm256_fmadd_pd(z, z, _mm256_fmadd_pd(y, y, _mm256_mul_pd(x, x)));
      __m256d w = _mm256_div_pd(_mm256_set1_pd(1.0),
                                _mm256_mul_pd(r2, _mm256_sqrt_pd(r2)));
      __m256d tx = _mm256_fmadd_pd(_mm256_set1_pd(M.a[6]), z,
                   _mm256_fmadd_pd(_mm256_set1_pd(M.a[3]), y,
                   _mm256_mul_pd(_mm256_set1_pd(M.a[0]), x)));
      __m256d ty = _mm256_fmadd_pd(_mm256_set1_pd(M.a[7]), z,
                   _mm256_fmadd_pd(_mm256_set1_pd(M.a[4]), y,
                   _mm256_mul_pd(_mm256_set1_pd(M.a[1]), x)));
      __m256d tz = _mm256_fmadd_pd(_mm256_set1_pd(M.a[8]), z,
                   _mm256_fmadd_pd(_mm256_set1_pd(M.a[5]), y,
                   _mm256_mul_pd(_mm256_set1_pd(M.a[2]), x)));
      gx = _mm256_fnmadd_pd(w, tx, gx);
      gy = _mm256_fnmadd_pd(w, ty, gy);
      gz = _mm256_fnmadd_pd(w, tz, gz);
    }
    alignas(32) double lx[4], ly[4], lz[4];
    _mm256_store_pd(lx, gx);
    _mm256_store_pd(ly, gy);
    _mm256_store_pd(lz, gz);
    for (int k = 0; k < 4; ++k) {
      grads[i + k].x += scale * lx[k];
      grads[i + k].y += scale * ly[k];
      grads[i + k].z += scale * lz[k];
    }
  }
  if (i < npts) potential_grad_alpha1_scalar(mats, pts + i, npts - i, grads + i, scale);
}

}  // namespace nb::kernels
