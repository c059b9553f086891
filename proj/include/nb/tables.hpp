#pragma once
// Regeneration of the published collision-level and test-action tables.

#include <string>
#include <vector>

namespace nb {

struct TableCell {
  std::string table;    // "1", "2", "3"
  std::string row;      // row label
  std::string col;      // column label
  double computed = 0;
  double printed = 0;   // published reference value
  double absTol = 0;    // > 0: absolute comparison
  double relTol = 0;    // > 0: relative comparison
  bool pass = false;
  bool gating = true;   // false: known-discrepancy cell, reported but not gating
};

struct Inequality {
  std::string label;    // e.g. "table2 T: A(v1) < H^{2/3} a'"
  double lhs = 0, rhs = 0;
  bool holds = false;
};

struct TableSet {
  std::vector<TableCell> cells;
  std::vector<Inequality> inequalities;
  bool cellsOk = false;          // all gating cells within tolerance
  bool inequalitiesOk = false;   // every A(v) below its collision level
};

TableSet emit_tables();
std::string format_tables(const TableSet& t, bool check_marks);

}  // namespace nb
