#pragma once
// Homotopy invariant (sigma, n) extraction and cone comparisons.

#include <string>
#include <vector>

#include "nb/chambers.hpp"
#include "nb/loops.hpp"

namespace nb {

struct Crossing {
  double t = 0;          // crossing time in [0, T)
  int face = -1;         // chamber-complex face index
  int from = -1, to = -1;  // chambers; from == to marks a grazing contact
  bool transversal = true;
};

struct RawCrossings {
  std::vector<Crossing> events;     // time ordered over one period
  std::vector<int> chambers;        // chamber visit sequence (one per crossing)
};

// All face crossings of the piecewise-linear interpolant over one period.
RawCrossings crossing_sequence(const ChamberComplex& cc, const GeneratingLoop& u);

struct Invariant {
  std::vector<int> sigma;  // minimal period, translation-normalized
  int n = 0;
  bool trivial = false;    // reduction collapsed: contractible off Gamma
};

Invariant reduce_to_invariant(const RawCrossings& raw);
Invariant extract_invariant(const ChamberComplex& cc, const GeneratingLoop& u);

bool same_cone(const ChamberComplex& cc, const GeneratingLoop& a, const GeneratingLoop& b);

// Condition (C), operationalized as (III): the closures of the chambers of
// sigma intersect only at the origin.
bool condition_C_check(const ChamberComplex& cc, const std::vector<int>& sigma);

struct CollisionLocus {
  int k = 0;
  int axis = -1;          // axis index of the ray r_k
  Vec3 ray;               // unit direction of r_k
  int third_face = -1;    // S^k
  int ktilde = -1;        // first k + h with closure(S^k) meeting closure(S^{k+h})
  bool star_ok = false;   // S^{k tilde} != S^k
};

std::vector<CollisionLocus> collision_loci(const ChamberComplex& cc,
                                           const std::vector<int>& sigma);

struct CrossingAudit {
  int expected = 0;        // n K_sigma
  int transversal = 0;
  int grazing = 0;
  bool ok = false;         // transversal == expected and no grazing
};

CrossingAudit crossing_count_audit(const ChamberComplex& cc, const GeneratingLoop& u,
                                   const std::vector<int>& sigma, int n);

struct ConeReport {
  bool member = false;
  double min_dist_gamma = 0;
  std::string detail;
};

ConeReport cone_membership_report(const GeneratingLoop& u, const ConeDescriptor& d);

}  // namespace nb
