#pragma once
// L2 gradient flow (descent with Armijo backtracking) on the discrete action.

#include <string>
#include <vector>

#include "nb/action.hpp"
#include "nb/loops.hpp"

namespace nb {

struct FlowParams {
  double step = 1e-3;          // initial trial step
  int maxSteps = 20000;
  double gradTol = 1e-8;       // stop when the gradient norm falls below
  double backtrack = 0.5;      // in (0,1)
  double minDistFloor = -1;    // < 0: defaults to 1e-4 x loop diameter
  double alpha = 1;
  int auditEvery = 200;        // cone / symmetry audit cadence
};

struct FlowRecord {
  int step = 0;
  double action = 0;
  double gradNorm = 0;
  double minDistGamma = 0;
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  GeneratingLoop final;
  std::string termination;     // "gradTol" | "maxSteps" | "minDistFloor" | "stalled"
  bool monotone = true;
  int acceptedSteps = 0;
};

// Exact gradient of the discrete action w.r.t. all sample positions; projected
// onto the symmetric subspace when gens is nonempty.
std::vector<Vec3> discrete_gradient(const GeneratingLoop& u, double alpha,
                                    const std::vector<SymOp>& gens = {});

FlowTrace gradient_flow(const GeneratingLoop& u0, const FlowParams& params,
                        const std::vector<SymOp>& gens = {});

struct ResidualReport {
  double elResidual = 0;       // max | u'' - force |
  double energyDrift = 0;      // relative drift of the discrete energy
};

ResidualReport verify_solution(const GeneratingLoop& u, double alpha);

struct AlphaSummary {
  double alpha = 0;
  ActionBreakdown breakdown;
  double supNorm = 0;          // max |u_1|
  double meanSpeed = 0;        // arc length / T
  bool converged = false;
  std::string note;
};

// Warm-started sweep over the alpha list starting from u0.
std::vector<AlphaSummary> alpha_sweep(const GeneratingLoop& u0,
                                      const std::vector<double>& alphas,
                                      const FlowParams& params,
                                      const std::vector<SymOp>& gens = {},
                                      std::vector<GeneratingLoop>* finals = nullptr);

double loop_diameter(const GeneratingLoop& u);

}  // namespace nb
