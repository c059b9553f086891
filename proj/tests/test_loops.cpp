#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "nb/action.hpp"
#include "nb/catalog.hpp"
#include "nb/loops.hpp"
#include "nb/topology.hpp"

using namespace nb;

namespace {
// Distance from x to segment [a, b].
double seg_dist(const Vec3& x, const Vec3& a, const Vec3& b) {
  Vec3 d = b - a;
  double t = dot(x - a, d) / norm2(d);
  t = std::clamp(t, 0.0, 1.0);
  return norm(x - (a + t * d));
}
}  // namespace

TEST_SUITE("loops") {

TEST_CASE("loop_from_nu samples the edge path at constant speed") {
  RotationGroup g = build_rotation_group(GroupKind::T);
  ArchimedeanPolyhedron p = build_qr(g);
  const CatalogEntry& e = catalog_entry("T.nu1");
  int m = 96;
  GeneratingLoop u = loop_from_nu(p, e.path, 1, 2.0, m, e.tau0);
  CHECK(u.m() == m);
  CHECK(u.T == 2.0);
  CHECK(u.N == g.order);
  CHECK(static_cast<int>(u.mats.size()) == g.order - 1);
  // Every sample lies on some edge of the path.
  int K = static_cast<int>(e.path.size());
  for (const Vec3& x : u.pts) {
    double best = 1e9;
    for (int k = 0; k < K; ++k)
      best = std::min(best, seg_dist(x, p.vertices[e.path[k]],
                                     p.vertices[e.path[(k + 1) % K]]));
    CHECK(best < 1e-9);
  }
  // Total polyline length over one period is K * ell; speed K ell / T.
  double len = 0;
  for (int i = 0; i < m; ++i) len += norm(u.pts[(i + 1) % m] - u.pts[i]);
  CHECK(len == doctest::Approx(K * p.ell).epsilon(1e-9));
  // tau0 offset: the first sample sits at parameter tau0 on the first edge.
  Vec3 expected = (1 - e.tau0) * p.vertices[e.path[0]] + e.tau0 * p.vertices[e.path[1]];
  CHECK(norm(u.pts[0] - expected) < 1e-9);
}

TEST_CASE("piecewise-linear interpolation is periodic and hits the samples") {
  RotationGroup g = build_rotation_group(GroupKind::T);
  ArchimedeanPolyhedron p = build_qr(g);
  GeneratingLoop u = loop_from_nu(p, catalog_entry("T.nu2").path, 1, 1.5, 48, 0.25);
  for (int i = 0; i < u.m(); ++i)
    CHECK(norm(u.at(i * u.dt()) - u.pts[i]) < 1e-12);
  CHECK(norm(u.at(0.0) - u.at(u.T)) < 1e-12);
  CHECK(norm(u.at(-0.3) - u.at(u.T - 0.3)) < 1e-12);
  // Midpoint of a grid interval is the average of its endpoints.
  Vec3 mid = 0.5 * (u.pts[3] + u.pts[4]);
  CHECK(norm(u.at(3.5 * u.dt()) - mid) < 1e-12);
}

TEST_CASE("resample_loop round trips on nested grids") {
  RotationGroup g = build_rotation_group(GroupKind::T);
  ArchimedeanPolyhedron p = build_qr(g);
  GeneratingLoop u = loop_from_nu(p, catalog_entry("T.nu1").path, 1, 1.0, 48, 0.25);
  GeneratingLoop up = resample_loop(u, 96);   // prolongation
  CHECK(up.m() == 96);
  CHECK(up.N == u.N);
  for (int i = 0; i < u.m(); ++i) CHECK(norm(up.pts[2 * i] - u.pts[i]) < 1e-12);
  GeneratingLoop down = resample_loop(up, 48);  // restriction undoes it
  for (int i = 0; i < u.m(); ++i) CHECK(norm(down.pts[i] - u.pts[i]) < 1e-12);
  CHECK_THROWS(resample_loop(u, 2));
}

TEST_CASE("loop_from_sigma stays in the right chambers") {
  RotationGroup g = build_rotation_group(GroupKind::O);
  ChamberComplex cc(g);
  ArchimedeanPolyhedron p = build_qr(g);
  const CatalogEntry& e = catalog_entry("O.nu2");
  std::vector<int> sigma = sigma_from_nu(cc, p, e.path);
  GeneratingLoop u = loop_from_sigma(cc, sigma, 1, 1.0, 64 * e.Ksig);
  CHECK(u.N == g.order);
  Invariant inv = extract_invariant(cc, u);
  CHECK(inv.n == 1);
  CHECK(inv.sigma == normalize_cyclic(sigma));
}

TEST_CASE("symmetry operations compose and close") {
  int m = 48;
  std::vector<SymOp> gens = k4_constraint(m);
  std::vector<SymOp> cl = sym_closure(gens, m);
  CHECK(cl.size() >= 4);
  // Closure is closed under composition.
  for (const SymOp& a : cl)
    for (const SymOp& b : cl) {
      SymOp c = compose(a, b);
      bool found = false;
      for (const SymOp& d : cl)
        if (max_abs_diff(c.W, d.W) < 1e-9 &&
            ((c.shift - d.shift) % m + m) % m == 0 && c.eps == d.eps)
          found = true;
      CHECK(found);
    }
}

TEST_CASE("symmetrize is an idempotent projection") {
  GeneratingLoop u = k4_test_loop(0.5, 1.0, 64);
  std::vector<SymOp> gens = k4_constraint(u.m());
  CHECK(symmetry_defect(u, gens) < 1e-12);  // the test loop is already symmetric
  // Perturb and project.
  GeneratingLoop v = u;
  v.pts[5] += Vec3{0.03, -0.01, 0.02};
  v.pts[17] += Vec3{-0.02, 0.02, 0.01};
  CHECK(symmetry_defect(v, gens) > 1e-3);
  GeneratingLoop w = symmetrize(v, gens);
  CHECK(symmetry_defect(w, gens) < 1e-12);
  GeneratingLoop w2 = symmetrize(w, gens);
  for (int i = 0; i < w.m(); ++i) CHECK(norm(w.pts[i] - w2.pts[i]) < 1e-12);
}

TEST_CASE("k4 test loop geometry") {
  double rho = 0.4, T = 1.0;
  GeneratingLoop u = k4_test_loop(rho, T, 128);
  CHECK(u.N == 4);
  CHECK(u.mats.size() == 3);
  for (const Vec3& x : u.pts)
    CHECK(norm(x) == doctest::Approx(rho * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(k4_min_distance_to_gamma(u) > 0.1 * rho);
  // Cone sign test: u11(0) u11(T/4) < 0.
  CHECK(u.at(0).x * u.at(T / 4).x < 0);
  ConeDescriptor d;
  d.kind = ConeDescriptor::Kind::K4;
  ConeReport rep = cone_membership_report(u, d);
  CHECK(rep.member);
}

TEST_CASE("expand_orbit produces the full configuration") {
  RotationGroup g = build_rotation_group(GroupKind::T);
  ArchimedeanPolyhedron p = build_qr(g);
  GeneratingLoop u = loop_from_nu(p, catalog_entry("T.nu1").path, 1, 1.0, 32, 0.25);
  auto orbit = expand_orbit(u, g);
  REQUIRE(static_cast<int>(orbit.size()) == g.order);
  for (int j = 0; j < g.order; ++j)
    for (int i = 0; i < u.m(); ++i)
      CHECK(norm(orbit[j][i] - g.mat(j) * u.pts[i]) < 1e-12);
}

TEST_CASE("test loops avoid Gamma") {
  for (const CatalogGroup& cg : catalog()) {
    RotationGroup g = build_rotation_group(cg.kind);
    ArchimedeanPolyhedron p = build_qr(g);
    AxisSet ax = axes_of(g);
    for (const CatalogEntry& e : cg.entries) {
      GeneratingLoop u = loop_from_nu(p, e.path, 1, 1.0, 32 * e.Ksig, e.tau0);
      CHECK(min_distance_to_gamma(u, ax) > 1e-3);
    }
  }
}

TEST_CASE("in_open_angle") {
  Vec3 er{1, 0, 0}, es{0, 1, 0}, n{0, 0, 1};
  CHECK(in_open_angle(normalized({1, 1, 0}), er, es, n));
  CHECK(!in_open_angle(normalized({1, -0.2, 0}), er, es, n));   // outside
  CHECK(!in_open_angle(normalized({1, 1, 0.3}), er, es, n));    // off-plane
  CHECK(!in_open_angle(er, er, es, n));                         // boundary
}

TEST_CASE("constraint builders demand exact grid shifts") {
  ReferenceFrame fr = reference_frame(Solid::Tetrahedron);
  CHECK_THROWS(abc_constraint(fr, 50, true));  // 50 not divisible by H = 3
  std::vector<SymOp> ok = abc_constraint(fr, 48, true);
  CHECK(ok.size() == 2);
  CHECK_THROWS(k4_constraint(30));  // needs m divisible by 4
}

}  // TEST_SUITE
