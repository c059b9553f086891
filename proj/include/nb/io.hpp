#pragma once
// Loop/trajectory file formats and config-driven pipeline execution.

#include <string>

#include "nb/loops.hpp"

namespace nb {

// CSV rows `t,particle,x,y,z` (17 significant digits); particle 1..N when a
// group is given, otherwise just the generating particle.
void export_csv(const GeneratingLoop& u, const RotationGroup* g, const std::string& path);

// JSON round-trip of a loop (metadata + sample array, bit-exact).
void export_loop_json(const GeneratingLoop& u, const std::string& path,
                      const std::string& cone_id = "");
GeneratingLoop import_loop_json(const std::string& path);

// Execute a JSON config: build -> test loop -> optional minimize -> invariant
// audit -> export. Returns a process exit code.
int run_config(const std::string& path);

}  // namespace nb
