#pragma once
// Built-in catalog of generating vertex paths and frozen reference data.

#include <string>
#include <vector>

#include "nb/groups.hpp"
#include "nb/linalg.hpp"

namespace nb {

struct CatalogEntry {
  std::string id;         // "T.nu1" ... "I.min3"
  GroupKind group;        // rotation group the loop lives in
  bool is_min = false;    // minimizing-cone entry (K^P_i) vs Theorem-5 nu entry
  int M = 0;              // symmetry order (nu entries)
  int cone = 0;           // cone index i in {1,2,3} (min entries)
  bool dual = false;      // frame realized through the dual solid (min entries)
  int Hframe = 0;         // H of the placing frame (min entries)
  double tau0 = 0;        // phase offset of the symmetric parameterization
  std::vector<int> path;  // one period, canonical vertex indices
  int N1 = 0, N2 = 0;     // edge-orbit counts per period
  int Ksig = 0;           // length of the reduced minimal sigma
};

struct CatalogGroup {
  GroupKind kind;
  double ups1 = 0, ups2 = 0;  // tabulated edge integrals
  double ell = 0;             // edge length at unit circumradius
  Vec3 q;                     // frozen seed vertex
  std::vector<Vec3> verts;    // frozen canonical vertex coordinates
  std::vector<CatalogEntry> entries;
};

const std::vector<CatalogGroup>& catalog();
const CatalogGroup& catalog_group(GroupKind k);
const CatalogEntry& catalog_entry(const std::string& id);
std::vector<std::string> catalog_ids();

}  // namespace nb
