#pragma once
// Rotation groups of the Platonic solids, their axes and reference frames.

#include <string>
#include <vector>

#include "nb/linalg.hpp"

namespace nb {

enum class GroupKind { T, O, I };
enum class Solid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

GroupKind group_of(Solid p);
std::string to_string(GroupKind k);
std::string to_string(Solid p);
bool parse_group(const std::string& s, GroupKind& out);
bool parse_solid(const std::string& s, Solid& out);

struct Rotation3 {
  Mat3 matrix;
  Vec3 axis;     // unit, canonical sign; undefined (zero) for the identity
  double angle;  // in (0, 2*pi); 0 for the identity
  bool identity = false;
};

struct RotationGroup {
  GroupKind kind;
  Solid base;  // solid the construction starts from (T -> tetra, O -> cube, I -> dodeca)
  int order = 0;
  int H = 0;  // vertices per face of the base solid
  int K = 0;  // faces of the base solid
  std::vector<Rotation3> elements;  // identity at index 0

  // Fundamental flag of the base solid: face center, edge midpoint, vertex.
  Vec3 e1, eM, eV;
  double phiM = 0, phiV = 0;

  const Mat3& mat(int i) const { return elements[i].matrix; }
  // Index of the element closest to m (max-abs distance < 1e-9), or -1.
  int find(const Mat3& m) const;
};

struct Axis {
  Vec3 dir;   // unit, canonical sign (lexicographically largest of the pair +-d)
  int fold;   // order of the maximal cyclic subgroup
  std::vector<int> subgroup;  // element indices, identity excluded
};

struct AxisSet {
  std::vector<Axis> axes;
};

struct ReferenceFrame {
  Vec3 e1, e2, e3;       // orthonormal right-handed basis
  Vec3 eM, eV;           // directions of the edge midpoint M and vertex V
  Vec3 eAlpha, eBeta;    // auxiliary axis directions
  double phiM = 0, phiV = 0, psiAlpha = 0, psiBeta = 0;
  int foldAlpha = 0, foldBeta = 0;
  int H = 0, K = 0;
};

RotationGroup build_rotation_group(GroupKind kind);
AxisSet axes_of(const RotationGroup& g);

// R^S = R~_S R R~_S for a mirror R~_S of the reflection group; rejects the identity.
Rotation3 conjugate_across_face(const Rotation3& r, const Mat3& face_reflection);

// Frame of P in its own standard orientation (xi1 toward a face center of P).
ReferenceFrame reference_frame(Solid p);

// Frame of P expressed in the coordinates of group_of(P)'s base-solid context.
// For P dual to the base solid (octahedron, icosahedron) this swaps the roles
// of e1 and eV of the shared fundamental flag.
ReferenceFrame reference_frame_in_group(const RotationGroup& g, Solid p);

// Canonical sign for an axis direction.
Vec3 canonical_dir(const Vec3& d);

// Axis/angle extraction from a rotation matrix (not the identity).
void axis_angle(const Mat3& m, Vec3& axis, double& angle);

// Closure of a generator set under multiplication (matrices compared at 1e-9).
std::vector<Mat3> closure(const std::vector<Mat3>& gens, std::size_t max_order = 200);

// Full reflection group R~ of g (order 2N), identity first.
std::vector<Mat3> reflection_group(const RotationGroup& g);

// Seed mirror normals n1 = e1 x eM, n2 = eM x eV, n3 = eV x e1 (normalized).
void seed_mirrors(const RotationGroup& g, Vec3& n1, Vec3& n2, Vec3& n3);

// The Klein four-group {I, Rx, Ry, Rz} used by the 4-body cone K4.
std::vector<Mat3> k4_group();

}  // namespace nb
