#pragma once
// The Archimedean polyhedron Q_R associated to a rotation group.

#include <map>
#include <string>
#include <vector>

#include "nb/chambers.hpp"
#include "nb/groups.hpp"
#include "nb/linalg.hpp"

namespace nb {

struct QEdge {
  int a = 0, b = 0;   // vertex indices, a < b
  int orbit = 0;      // 1 or 2
};

struct QFace {
  std::vector<int> verts;  // cyclic
  int type = 0;            // 0 = square, 1 = F1 orbit (H-gon about xi1), 2 = F2 orbit
};

struct ArchimedeanPolyhedron {
  GroupKind kind;
  std::vector<Vec3> vertices;      // |R| unit vectors, canonical numbering
  std::vector<QEdge> edges;        // |R~| edges
  std::vector<QFace> faces;
  std::vector<std::vector<int>> adj;
  Vec3 q, q1, q2;                  // seed vertex and its mirror images
  int iq = 0;                      // canonical index of q
  double ell = 0;                  // edge length

  std::map<std::pair<int, int>, int> edge_index;  // (a,b) with a < b -> index into edges

  int vertex_id(const Vec3& v) const;          // nearest vertex (< 1e-9), or -1
  int edge_class(int a, int b) const;          // 1, 2, or 0 if not an edge
};

// The unique q on the arc S3 inside the fundamental domain with
// |q - R1 q| = |q - R2 q|; fails if the mirrors Pi1, Pi2 are not orthogonal.
Vec3 seed_vertex(const ChamberComplex& cc);

ArchimedeanPolyhedron build_qr(const RotationGroup& g);

// Orbit label of an edge; throws if (a, b) is not an edge.
int edge_orbit_class(const ArchimedeanPolyhedron& p, int a, int b);

// Canonical numbering of an arbitrary list of unit vectors: descending
// lexicographic by (xi1, xi2, xi3) with tolerance 1e-6 per coordinate.
// Returns the permutation: result[i] = index into `pts` of canonical vertex i.
std::vector<int> canonical_numbering(const std::vector<Vec3>& pts);

struct NuCheck {
  bool ok = false;
  std::string violation;
  int index = -1;
  int minimal_period = 0;
  int multiplicity = 0;
};

// Conditions [i] (edge path) and [ii] (not contained in one face closure).
NuCheck validate_nu(const ArchimedeanPolyhedron& p, const std::vector<int>& nu, int n = 1);

// Face sizes around vertex v in cyclic order, normalized to the smallest
// rotation over both orientations (e.g. {3,4,4,4}).
std::vector<int> vertex_configuration(const ArchimedeanPolyhedron& p, int v);

// The paired sigma of (nu, n): chamber sequence crossed by v^(nu,n).
std::vector<int> sigma_from_nu(const ChamberComplex& cc, const ArchimedeanPolyhedron& p,
                               const std::vector<int>& nu);

// Inverse map: vertex sequence visited by u^(sigma,n).
std::vector<int> nu_from_sigma(const ChamberComplex& cc, const ArchimedeanPolyhedron& p,
                               const std::vector<int>& sigma);

}  // namespace nb
