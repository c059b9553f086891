#include <cmath>
#include <random>

#include "doctest.h"

#include "nb/action.hpp"
#include "nb/bounds.hpp"
#include "nb/catalog.hpp"
#include "nb/loops.hpp"
#include "nb/optimizer.hpp"
#include "nb/topology.hpp"

using namespace nb;

namespace {
GeneratingLoop perturbed_catalog_loop(const std::string& id, int m, unsigned seed,
                                      double amp) {
  const CatalogEntry& e = catalog_entry(id);
  RotationGroup g = build_rotation_group(e.group);
  ArchimedeanPolyhedron p = build_qr(g);
  GeneratingLoop u = loop_from_nu(p, e.path, 1, 1.0, m, e.tau0);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-amp, amp);
  for (Vec3& x : u.pts) x += Vec3{U(rng), U(rng), U(rng)};
  return u;
}
}  // namespace

TEST_SUITE("optimizer") {

TEST_CASE("analytic gradient matches central finite differences") {
  // 20 random loops across the three groups and the 4-body symmetry set.
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(-1, 1);
  const char* ids[] = {"T.nu1", "T.min3", "O.nu2", "C.min1", "I.nu3", "D.min2"};
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    GeneratingLoop u;
    if (trial % 4 == 3) {
      u = k4_test_loop(0.3 + 0.1 * (trial % 3), 1.0, 16);
      for (Vec3& x : u.pts) x += Vec3{0.03 * U(rng), 0.03 * U(rng), 0.03 * U(rng)};
    } else {
      u = perturbed_catalog_loop(ids[trial % 6], 16, 50 + trial, 0.04);
    }
    double alpha = (trial % 5 == 0) ? 1.7 : 1.0;
    std::vector<Vec3> g = discrete_gradient(u, alpha);
    // Directional derivative along a random direction.
    std::vector<Vec3> dir(u.m());
    double dn = 0;
    for (Vec3& d : dir) {
      d = {U(rng), U(rng), U(rng)};
      dn += norm2(d);
    }
    double gd = 0;
    for (int i = 0; i < u.m(); ++i) gd += dot(g[i], dir[i]);
    double h = 1e-6 / std::sqrt(dn);
    GeneratingLoop up = u, um = u;
    for (int i = 0; i < u.m(); ++i) {
      up.pts[i] += h * dir[i];
      um.pts[i] -= h * dir[i];
    }
    double fd = (action(up, alpha).total - action(um, alpha).total) / (2 * h);
    CAPTURE(trial);
    CHECK(std::fabs(fd - gd) < 1e-6 * std::max(1.0, std::fabs(fd)));
    checked++;
  }
  CHECK(checked == 20);
}

TEST_CASE("projected gradient stays in the symmetric subspace") {
  GeneratingLoop u = k4_test_loop(0.4, 1.0, 64);
  std::vector<SymOp> gens = k4_constraint(u.m());
  std::vector<Vec3> g = discrete_gradient(u, 1.0, gens);
  GeneratingLoop gl = u;
  gl.pts = g;
  CHECK(symmetry_defect(gl, gens) < 1e-10);
}

TEST_CASE("gradient flow descends monotonically and keeps the invariant") {
  const CatalogEntry& e = catalog_entry("T.nu1");
  RotationGroup g = build_rotation_group(e.group);
  ChamberComplex cc(g);
  ArchimedeanPolyhedron p = build_qr(g);
  GeneratingLoop u0 = loop_from_nu(p, e.path, 1, 1.0, 64 * e.Ksig, e.tau0);
  ActionBreakdown b0 = action(u0);
  GeneratingLoop us = scale_loop(u0, b0.lambdaStar);
  Invariant before = extract_invariant(cc, us);

  FlowParams fp;
  fp.maxSteps = 400;
  fp.step = 1e-4;
  fp.gradTol = 1e-10;
  fp.auditEvery = 50;
  FlowTrace tr = gradient_flow(us, fp);
  CHECK(tr.monotone);
  CHECK(tr.acceptedSteps > 0);
  double a_final = action(tr.final).total;
  CHECK(a_final < b0.scaledMin);
  // Records are non-increasing in action.
  for (std::size_t i = 0; i + 1 < tr.records.size(); ++i)
    CHECK(tr.records[i + 1].action <= tr.records[i].action + 1e-12);
  Invariant after = extract_invariant(cc, tr.final);
  CHECK(after.n == before.n);
  CHECK(after.sigma == before.sigma);
  CHECK(same_cone(cc, us, tr.final));
  // The flow never walked into Gamma.
  for (const FlowRecord& r : tr.records) CHECK(r.minDistGamma > 1e-3);
}

TEST_CASE("flow stops at the distance floor instead of hitting a collision") {
  // A two-chamber excursion is contractible; unconstrained descent pushes it
  // toward Gamma and must stop at the floor, not throw.
  RotationGroup g = build_rotation_group(GroupKind::T);
  GeneratingLoop u;
  u.T = 1.0;
  u.N = g.order;
  for (const Rotation3& r : g.elements)
    if (!r.identity) {
      u.rots.push_back(r.matrix);
      u.mats.push_back(r.matrix - identity3());
    }
  ChamberComplex cc(g);
  const Chamber& c = cc.chambers()[0];
  for (int i = 0; i < 48; ++i) {
    double th = 2 * std::acos(-1.0) * i / 48;
    u.pts.push_back(c.center + 0.05 * std::cos(th) * c.v0 + 0.05 * std::sin(th) * c.v1);
  }
  FlowParams fp;
  fp.maxSteps = 3000;
  fp.step = 1e-3;
  fp.minDistFloor = 0.05;
  FlowTrace tr = gradient_flow(u, fp);
  CHECK((tr.termination == "minDistFloor" || tr.termination == "stalled" ||
         tr.termination == "maxSteps"));
  CHECK_NOTHROW(action(tr.final));
}

TEST_CASE("verify_solution reports small residuals only near equilibria") {
  const CatalogEntry& e = catalog_entry("T.min1");
  RotationGroup g = build_rotation_group(e.group);
  ArchimedeanPolyhedron p = build_qr(g);
  GeneratingLoop u0 = loop_from_nu(p, e.path, 1, 1.0, 128 * static_cast<int>(e.path.size()),
                                   e.tau0);
  GeneratingLoop us = scale_loop(u0, action(u0).lambdaStar);
  ResidualReport before = verify_solution(us, 1.0);
  FlowParams fp;
  fp.maxSteps = 2000;
  fp.step = 1e-4;
  fp.gradTol = 1e-8;
  FlowTrace tr = gradient_flow(us, fp);
  ResidualReport after = verify_solution(tr.final, 1.0);
  CHECK(after.elResidual < before.elResidual);
  CHECK(after.energyDrift < before.energyDrift);
}

TEST_CASE("alpha sweep warm starts and reports summaries") {
  GeneratingLoop u = k4_test_loop(k4_optimal_rho(1.0), 1.0, 64);
  FlowParams fp;
  fp.maxSteps = 150;
  fp.step = 1e-4;
  std::vector<SymOp> gens = k4_constraint(u.m());
  std::vector<AlphaSummary> res = alpha_sweep(u, {1.0, 1.2}, fp, gens);
  REQUIRE(res.size() == 2);
  for (const AlphaSummary& s : res) {
    CHECK(s.supNorm > 0);
    CHECK(s.meanSpeed > 0);
    CHECK(!s.note.empty());
    CHECK(s.breakdown.total > 0);
  }
  CHECK(res[0].alpha == 1.0);
  CHECK(res[1].alpha == 1.2);
}

}  // TEST_SUITE
