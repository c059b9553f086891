#pragma once
// Reflection group R~ and its chamber decomposition of R^3.

#include <string>
#include <vector>

#include "nb/groups.hpp"
#include "nb/linalg.hpp"

namespace nb {

struct Chamber {
  int index = 0;
  int element = 0;          // index into ChamberComplex::refl
  Vec3 v0, v1, v2;          // spherical-triangle vertex directions (W e1, W eM, W eV)
  Mat3 basis;               // columns v0 v1 v2
  Vec3 center;              // normalized v0 + v1 + v2
  int neighbor[3] = {-1, -1, -1};  // neighbor across the face opposite ray j
  int face[3] = {-1, -1, -1};      // face index opposite ray j
};

struct ChamberFace {
  int index = 0;
  Vec3 normal;     // unit plane normal
  int c1 = -1, c2 = -1;  // the two chambers it separates (c2 = R~_S c1)
};

class ChamberComplex {
 public:
  explicit ChamberComplex(const RotationGroup& g);

  const RotationGroup& group() const { return group_; }
  const std::vector<Mat3>& refl() const { return refl_; }
  const std::vector<Chamber>& chambers() const { return chambers_; }
  const std::vector<ChamberFace>& faces() const { return faces_; }
  const AxisSet& axes() const { return axes_; }
  const Mat3& mirror1() const { return r1_; }
  const Mat3& mirror2() const { return r2_; }
  const Mat3& mirror3() const { return r3_; }
  const Vec3& n3() const { return n3_; }

  // Cone coordinates of x in chamber k's ray basis.
  Vec3 coords(int k, const Vec3& x) const;

  struct Locate {
    enum class Kind { Chamber, Face, OnGamma } kind;
    int index = -1;  // chamber or face index; axis index for OnGamma
  };
  // Classify a nonzero point; tolerance band (on the normalized point) around
  // faces and axes.
  Locate locate(const Vec3& x, double tol = 1e-9) const;
  // Index of the open chamber containing x, or -1.
  int locate_chamber(const Vec3& x, double tol = 1e-9) const;
  // True if x lies in the closure of chamber k.
  bool in_closure(int k, const Vec3& x, double tol = 1e-9) const;
  // Face between adjacent chambers a, b; -1 if not adjacent.
  int face_between(int a, int b) const;
  // True if the ray through unit direction d lies in the closure of chamber k.
  bool ray_in_closure(int k, const Vec3& d, double tol = 1e-9) const;

 private:
  RotationGroup group_;
  std::vector<Mat3> refl_;
  std::vector<Chamber> chambers_;
  std::vector<ChamberFace> faces_;
  AxisSet axes_;
  Mat3 r1_, r2_, r3_;
  Vec3 n1_, n2_, n3_;
};

ChamberComplex build_chamber_complex(const RotationGroup& g);

Vec3 chamber_center(const Chamber& c);

struct SigmaCheck {
  bool ok = false;
  std::string violation;   // empty when ok
  int index = -1;          // first offending position
  int minimal_period = 0;
  int multiplicity = 0;    // n = len / minimal_period
  std::vector<int> normalized;  // lexicographically smallest rotation of one minimal period
};

// Check conditions (I), (II), (III) for a periodic chamber list (one period of
// sigma repeated n times is also accepted; multiplicity is reported).
SigmaCheck validate_sigma(const ChamberComplex& cc, const std::vector<int>& seq, int n = 1);

// Definition-2 test: no string of 2|C|+1 consecutive chambers wraps an axis.
bool is_simple(const ChamberComplex& cc, const std::vector<int>& seq);

// Lexicographically smallest cyclic rotation.
std::vector<int> normalize_cyclic(const std::vector<int>& s);

// Reduction rules for raw chamber sequences: drop D_h == D_{h+1}; drop the pair
// (D_h, D_{h+1}) whenever D_{h-1} == D_{h+1} (cyclically), until stable.
std::vector<int> reduce_sigma(const std::vector<int>& seq);

// Minimal cyclic period of a sequence.
int minimal_period(const std::vector<int>& s);

}  // namespace nb
