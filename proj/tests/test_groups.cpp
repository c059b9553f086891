#include <cmath>
#include <map>

#include "doctest.h"

#include "nb/groups.hpp"

using namespace nb;

namespace {
bool is_orthogonal(const Mat3& m) {
  Mat3 mt = m.transposed();
  return max_abs_diff(mt * m, Mat3::identity()) < 1e-12;
}
}  // namespace

TEST_SUITE("groups") {

TEST_CASE("orders and base data") {
  struct Row {
    GroupKind k;
    int order, H, K;
  };
  for (Row r : {Row{GroupKind::T, 12, 3, 4}, Row{GroupKind::O, 24, 4, 6},
                Row{GroupKind::I, 60, 5, 12}}) {
    RotationGroup g = build_rotation_group(r.k);
    CHECK(g.order == r.order);
    CHECK(static_cast<int>(g.elements.size()) == r.order);
    CHECK(g.H == r.H);
    CHECK(g.K == r.K);
    CHECK(g.elements[0].identity);
    CHECK(g.order == g.H * g.K);
  }
}

TEST_CASE("group closure, inverses, orthogonality") {
  for (GroupKind k : {GroupKind::T, GroupKind::O, GroupKind::I}) {
    RotationGroup g = build_rotation_group(k);
    for (const Rotation3& r : g.elements) {
      CHECK(is_orthogonal(r.matrix));
      CHECK(det(r.matrix) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(g.find(r.matrix.transposed()) >= 0);  // inverse in the group
    }
    // Products stay in the group (spot check all pairs for T, a stride for I).
    int stride = g.order > 24 ? 7 : 1;
    for (int i = 0; i < g.order; i += stride)
      for (int j = 0; j < g.order; j += stride)
        CHECK(g.find(g.mat(i) * g.mat(j)) >= 0);
  }
}

TEST_CASE("fundamental flag angles") {
  // phi_M = acos(cos(pi/q)/sin(pi/p)), phi_V = acos(1/(tan(pi/p) tan(pi/q)))
  // for Schlaefli {p,q} of the base solid: {3,3}, {4,3}, {5,3}.
  struct Row {
    GroupKind k;
    double p, q;
  };
  const double pi = std::acos(-1.0);
  for (Row r : {Row{GroupKind::T, 3, 3}, Row{GroupKind::O, 4, 3}, Row{GroupKind::I, 5, 3}}) {
    RotationGroup g = build_rotation_group(r.k);
    double phiM = std::acos(std::cos(pi / r.q) / std::sin(pi / r.p));
    double phiV = std::acos(1.0 / (std::tan(pi / r.p) * std::tan(pi / r.q)));
    CHECK(g.phiM == doctest::Approx(phiM).epsilon(1e-12));
    CHECK(g.phiV == doctest::Approx(phiV).epsilon(1e-12));
    CHECK(norm(g.e1) == doctest::Approx(1.0));
    CHECK(norm(g.eM) == doctest::Approx(1.0));
    CHECK(norm(g.eV) == doctest::Approx(1.0));
    CHECK(dot(g.e1, g.eM) == doctest::Approx(std::cos(phiM)).epsilon(1e-12));
    CHECK(dot(g.e1, g.eV) == doctest::Approx(std::cos(phiV)).epsilon(1e-12));
  }
}

TEST_CASE("axis census and cyclic partition") {
  std::map<GroupKind, std::map<int, int>> expected = {
      {GroupKind::T, {{3, 4}, {2, 3}}},
      {GroupKind::O, {{4, 3}, {3, 4}, {2, 6}}},
      {GroupKind::I, {{5, 6}, {3, 10}, {2, 15}}}};
  for (auto& [k, exp] : expected) {
    RotationGroup g = build_rotation_group(k);
    AxisSet ax = axes_of(g);
    std::map<int, int> census;
    int covered = 0;
    std::vector<int> seen(g.order, 0);
    for (const Axis& a : ax.axes) {
      census[a.fold]++;
      CHECK(static_cast<int>(a.subgroup.size()) == a.fold - 1);
      CHECK(norm(a.dir) == doctest::Approx(1.0));
      for (int e : a.subgroup) {
        CHECK(e != 0);
        seen[e]++;
        covered++;
        // subgroup elements fix the axis direction
        CHECK(norm(g.mat(e) * a.dir - a.dir) < 1e-9);
      }
    }
    CHECK(census == exp);
    CHECK(covered == g.order - 1);  // partition of the non-identity elements
    for (int e = 1; e < g.order; ++e) CHECK(seen[e] == 1);
  }
}

TEST_CASE("reflection group") {
  for (GroupKind k : {GroupKind::T, GroupKind::O, GroupKind::I}) {
    RotationGroup g = build_rotation_group(k);
    std::vector<Mat3> rg = reflection_group(g);
    CHECK(static_cast<int>(rg.size()) == 2 * g.order);
    int neg = 0;
    for (const Mat3& m : rg) {
      CHECK(is_orthogonal(m));
      if (det(m) < 0) neg++;
    }
    CHECK(neg == g.order);
    CHECK(max_abs_diff(rg[0], Mat3::identity()) < 1e-12);
  }
}

TEST_CASE("seed mirrors orthogonality of Pi1 and Pi2") {
  for (GroupKind k : {GroupKind::T, GroupKind::O, GroupKind::I}) {
    RotationGroup g = build_rotation_group(k);
    Vec3 n1, n2, n3;
    seed_mirrors(g, n1, n2, n3);
    CHECK(norm(n1) == doctest::Approx(1.0));
    CHECK(norm(n2) == doctest::Approx(1.0));
    CHECK(norm(n3) == doctest::Approx(1.0));
    CHECK(std::fabs(dot(n1, n2)) < 1e-12);
  }
}

TEST_CASE("conjugation across a face preserves the rotation angle") {
  RotationGroup g = build_rotation_group(GroupKind::O);
  Vec3 n1, n2, n3;
  seed_mirrors(g, n1, n2, n3);
  Mat3 s = reflection(n1);
  for (int i = 1; i < g.order; i += 5) {
    Rotation3 c = conjugate_across_face(g.elements[i], s);
    // A reflection flips the axis orientation, so the angle in (0, 2 pi) is
    // either preserved or complemented; the rotation amount is the same.
    double pi2 = 2 * std::acos(-1.0);
    double diff = std::min(std::fabs(c.angle - g.elements[i].angle),
                           std::fabs(c.angle - (pi2 - g.elements[i].angle)));
    CHECK(diff < 1e-10);
    CHECK(g.find(c.matrix) >= 0);
  }
}

TEST_CASE("reference frames") {
  for (Solid p : {Solid::Tetrahedron, Solid::Cube, Solid::Octahedron,
                  Solid::Dodecahedron, Solid::Icosahedron}) {
    ReferenceFrame f = reference_frame(p);
    CHECK(norm(f.e1) == doctest::Approx(1.0));
    CHECK(norm(f.e2) == doctest::Approx(1.0));
    CHECK(norm(f.e3) == doctest::Approx(1.0));
    CHECK(std::fabs(dot(f.e1, f.e2)) < 1e-12);
    CHECK(std::fabs(dot(f.e1, f.e3)) < 1e-12);
    CHECK(dot(cross(f.e1, f.e2), f.e3) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.foldAlpha >= 2);
    CHECK(f.foldBeta >= 2);
    CHECK(f.H >= 3);
    // eAlpha and eBeta are axes of the rotation group of P.
    RotationGroup g = build_rotation_group(group_of(p));
    ReferenceFrame fg = reference_frame_in_group(g, p);
    AxisSet ax = axes_of(g);
    auto on_axis = [&](const Vec3& d, int fold) {
      for (const Axis& a : ax.axes)
        if (a.fold == fold && std::fabs(std::fabs(dot(a.dir, d)) - 1.0) < 1e-9)
          return true;
      return false;
    };
    CHECK(on_axis(fg.eAlpha, fg.foldAlpha));
    CHECK(on_axis(fg.eBeta, fg.foldBeta));
  }
}

TEST_CASE("dual frames swap the flag roles") {
  RotationGroup go = build_rotation_group(GroupKind::O);
  ReferenceFrame cube = reference_frame_in_group(go, Solid::Cube);
  ReferenceFrame oct = reference_frame_in_group(go, Solid::Octahedron);
  CHECK(norm(cube.e1 - oct.eV) < 1e-12);
  CHECK(norm(cube.eV - oct.e1) < 1e-12);
  CHECK(cube.H == 4);
  CHECK(oct.H == 3);
}

TEST_CASE("klein four group") {
  std::vector<Mat3> k4 = k4_group();
  CHECK(k4.size() == 4);
  for (const Mat3& a : k4) {
    CHECK(is_orthogonal(a));
    CHECK(det(a) == doctest::Approx(1.0));
    CHECK(max_abs_diff(a * a, Mat3::identity()) < 1e-12);  // involutions
    bool found = false;
    for (const Mat3& b : k4)
      for (const Mat3& c : k4)
        if (max_abs_diff(b * c, a) < 1e-12) found = true;
    CHECK(found);
  }
}

TEST_CASE("parsing") {
  GroupKind k;
  CHECK(parse_group("T", k));
  CHECK(k == GroupKind::T);
  CHECK(parse_group("I", k));
  CHECK(k == GroupKind::I);
  CHECK(!parse_group("X", k));
  Solid s;
  CHECK(parse_solid("cube", s));
  CHECK(group_of(s) == GroupKind::O);
}

}  // TEST_SUITE
