#pragma once
// Potential-sum kernels for the Newtonian case (alpha = 1): a scalar reference
// implementation and an AVX2 variant selected at runtime.

#include <string>
#include <vector>

#include "nb/linalg.hpp"

namespace nb::kernels {

// Name of the implementation the dispatcher currently selects.
std::string active();
// Force the scalar path (for equivalence tests); returns the previous setting.
bool force_scalar(bool on);
bool avx2_available();

// per_point[i] = sum_r 1/|M_r p_i|; returns the total sum.
// mats: nmats row-major 3x3 matrices (M_r = R_r - I).
double potential_alpha1(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                        double* per_point = nullptr);

// grads[i] += scale * sum_r -|M_r p_i|^{-3} M_r^T M_r p_i.
void potential_grad_alpha1(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                           Vec3* grads, double scale);

// Scalar reference versions (always available, used by equivalence tests).
double potential_alpha1_scalar(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                               double* per_point);
void potential_grad_alpha1_scalar(const std::vector<Mat3>& mats, const Vec3* pts,
                                  int npts, Vec3* grads, double scale);

#ifdef NB_HAVE_AVX2_BUILD
double potential_alpha1_avx2(const std::vector<Mat3>& mats, const Vec3* pts, int npts,
                             double* per_point);
void potential_grad_alpha1_avx2(const std::vector<Mat3>& mats, const Vec3* pts,
                                int npts, Vec3* grads, double scale);
#endif

}  // namespace nb::kernels
