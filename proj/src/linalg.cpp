#include "nb/linalg.hpp"

namespace nb {

Mat3 rotation(const Vec3& axis, double ang) {
  Vec3 a = normalized(axis);
  double c = std::cos(ang), s = std::sin(ang), t = 1.0 - c;
  Mat3 m;
  m(0, 0) = t * a.x * a.x + c;
  m(0, 1) = t * a.x * a.y - s * a.z;
  m(0, 2) = t * a.x * a.z + s * a.y;
  m(1, 0) = t * a.x * a.y + s * a.z;
  m(1, 1) = t * a.y * a.y + c;
  m(1, 2) = t * a.y * a.z - s * a.x;
  m(2, 0) = t * a.x * a.z - s * a.y;
  m(2, 1) = t * a.y * a.z + s * a.x;
  m(2, 2) = t * a.z * a.z + c;
  return m;
}

Mat3 reflection(const Vec3& nrm) {
  Vec3 n = normalized(nrm);
  Mat3 m = Mat3::identity();
  m(0, 0) -= 2 * n.x * n.x; m(0, 1) -= 2 * n.x * n.y; m(0, 2) -= 2 * n.x * n.z;
  m(1, 0) -= 2 * n.y * n.x; m(1, 1) -= 2 * n.y * n.y; m(1, 2) -= 2 * n.y * n.z;
  m(2, 0) -= 2 * n.z * n.x; m(2, 1) -= 2 * n.z * n.y; m(2, 2) -= 2 * n.z * n.z;
  return m;
}

Vec3 solve3(const Mat3& m, const Vec3& b) {
  double d = det(m);
  Mat3 mx = m, my = m, mz = m;
  mx(0, 0) = b.x; mx(1, 0) = b.y; mx(2, 0) = b.z;
  my(0, 1) = b.x; my(1, 1) = b.y; my(2, 1) = b.z;
  mz(0, 2) = b.x; mz(1, 2) = b.y; mz(2, 2) = b.z;
  return {det(mx) / d, det(my) / d, det(mz) / d};
}

Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    m(r, 0) = c0[r];
    m(r, 1) = c1[r];
    m(r, 2) = c2[r];
  }
  return m;
}

}  // namespace nb
