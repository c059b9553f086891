#include "nb/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nb {

namespace {

constexpr double kPi = std::numbers::pi;

struct Schlafli {
  int p;  // vertices per face (H)
  int q;  // faces per vertex
  int K;  // face count
};

Schlafli schlafli(Solid s) {
  switch (s) {
    case Solid::Tetrahedron: return {3, 3, 4};
    case Solid::Cube: return {4, 3, 6};
    case Solid::Octahedron: return {3, 4, 8};
    case Solid::Dodecahedron: return {5, 3, 12};
    case Solid::Icosahedron: return {3, 5, 20};
  }
  throw std::invalid_argument("bad solid");
}

}  // namespace

GroupKind group_of(Solid p) {
  switch (p) {
    case Solid::Tetrahedron: return GroupKind::T;
    case Solid::Cube:
    case Solid::Octahedron: return GroupKind::O;
    case Solid::Dodecahedron:
    case Solid::Icosahedron: return GroupKind::I;
  }
  throw std::invalid_argument("bad solid");
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::T: return "T";
    case GroupKind::O: return "O";
    case GroupKind::I: return "I";
  }
  return "?";
}

std::string to_string(Solid p) {
  switch (p) {
    case Solid::Tetrahedron: return "tetrahedron";
    case Solid::Cube: return "cube";
    case Solid::Octahedron: return "octahedron";
    case Solid::Dodecahedron: return "dodecahedron";
    case Solid::Icosahedron: return "icosahedron";
  }
  return "?";
}

bool parse_group(const std::string& s, GroupKind& out) {
  if (s == "T") { out = GroupKind::T; return true; }
  if (s == "O") { out = GroupKind::O; return true; }
  if (s == "I") { out = GroupKind::I; return true; }
  return false;
}

bool parse_solid(const std::string& s, Solid& out) {
  if (s == "tetrahedron" || s == "T") { out = Solid::Tetrahedron; return true; }
  if (s == "cube" || s == "hexahedron" || s == "C") { out = Solid::Cube; return true; }
  if (s == "octahedron" || s == "O") { out = Solid::Octahedron; return true; }
  if (s == "dodecahedron" || s == "D") { out = Solid::Dodecahedron; return true; }
  if (s == "icosahedron" || s == "I") { out = Solid::Icosahedron; return true; }
  return false;
}

Vec3 canonical_dir(const Vec3& d) {
  const double tol = 1e-9;
  if (d.x > tol) return d;
  if (d.x < -tol) return -d;
  if (d.y > tol) return d;
  if (d.y < -tol) return -d;
  return d.z >= 0 ? d : -d;
}

void axis_angle(const Mat3& m, Vec3& axis, double& angle) {
  double c = std::clamp((trace(m) - 1.0) / 2.0, -1.0, 1.0);
  Vec3 w{m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)};  // 2 sin(a) * axis
  Vec3 a;
  if (norm(w) > 1e-6) {
    a = normalized(w);
  } else {
    // angle ~ pi: axis from the dominant column of m + I
    Mat3 mp = m + Mat3::identity();
    Vec3 cols[3] = {{mp(0, 0), mp(1, 0), mp(2, 0)},
                    {mp(0, 1), mp(1, 1), mp(2, 1)},
                    {mp(0, 2), mp(1, 2), mp(2, 2)}};
    int best = 0;
    for (int j = 1; j < 3; ++j)
      if (norm(cols[j]) > norm(cols[best])) best = j;
    a = normalized(cols[best]);
  }
  Vec3 ca = canonical_dir(a);
  double s = dot(w, ca) / 2.0;  // sin of the angle about the canonical axis
  double ang = std::atan2(s, c);
  if (ang <= 0) ang += 2 * kPi;
  axis = ca;
  angle = ang;
}

std::vector<Mat3> closure(const std::vector<Mat3>& gens, std::size_t max_order) {
  std::vector<Mat3> els{Mat3::identity()};
  auto find = [&els](const Mat3& m) {
    for (std::size_t i = 0; i < els.size(); ++i)
      if (max_abs_diff(els[i], m) < 1e-9) return static_cast<int>(i);
    return -1;
  };
  std::vector<Mat3> frontier = els;
  while (!frontier.empty()) {
    std::vector<Mat3> next;
    for (const Mat3& f : frontier)
      for (const Mat3& g : gens) {
        Mat3 m = g * f;
        if (find(m) < 0) {
          els.push_back(m);
          next.push_back(m);
        }
      }
    frontier = std::move(next);
    if (els.size() > max_order) throw std::runtime_error("group closure did not terminate");
  }
  return els;
}

int RotationGroup::find(const Mat3& m) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (max_abs_diff(elements[i].matrix, m) < 1e-9) return static_cast<int>(i);
  return -1;
}

namespace {

RotationGroup build_from_solid(Solid base, GroupKind kind) {
  auto [p, q, K] = schlafli(base);
  RotationGroup g;
  g.kind = kind;
  g.base = base;
  g.H = p;
  g.K = K;
  g.phiM = std::acos(std::cos(kPi / q) / std::sin(kPi / p));
  g.phiV = std::acos(1.0 / (std::tan(kPi / p) * std::tan(kPi / q)));
  g.e1 = {1, 0, 0};
  g.eM = {std::cos(g.phiM), std::sin(g.phiM), 0};
  g.eV = {std::cos(g.phiV), std::sin(g.phiV) * std::cos(kPi / p),
          std::sin(g.phiV) * std::sin(kPi / p)};
  Mat3 a = rotation(g.e1, 2 * kPi / p);
  Mat3 b = rotation(g.eM, kPi);
  std::vector<Mat3> els = closure({a, b});
  if (static_cast<int>(els.size()) != p * K)
    throw std::runtime_error("unexpected rotation group order");
  g.order = static_cast<int>(els.size());
  g.elements.reserve(els.size());
  for (const Mat3& m : els) {
    Rotation3 r;
    r.matrix = m;
    if (max_abs_diff(m, Mat3::identity()) < 1e-9) {
      r.identity = true;
      r.axis = {0, 0, 0};
      r.angle = 0;
    } else {
      axis_angle(m, r.axis, r.angle);
    }
    g.elements.push_back(r);
  }
  return g;
}

}  // namespace

RotationGroup build_rotation_group(GroupKind kind) {
  switch (kind) {
    case GroupKind::T: return build_from_solid(Solid::Tetrahedron, kind);
    case GroupKind::O: return build_from_solid(Solid::Cube, kind);
    case GroupKind::I: return build_from_solid(Solid::Dodecahedron, kind);
  }
  throw std::invalid_argument("bad group kind");
}

AxisSet axes_of(const RotationGroup& g) {
  AxisSet out;
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    const Rotation3& r = g.elements[i];
    if (r.identity) continue;
    bool found = false;
    for (Axis& ax : out.axes) {
      if (std::fabs(std::fabs(dot(ax.dir, r.axis)) - 1.0) < 1e-9) {
        ax.subgroup.push_back(static_cast<int>(i));
        found = true;
        break;
      }
    }
    if (!found) out.axes.push_back({r.axis, 0, {static_cast<int>(i)}});
  }
  for (Axis& ax : out.axes) {
    ax.fold = static_cast<int>(ax.subgroup.size()) + 1;  // identity included
    std::sort(ax.subgroup.begin(), ax.subgroup.end());
  }
  return out;
}

Rotation3 conjugate_across_face(const Rotation3& r, const Mat3& face_reflection) {
  if (r.identity) throw std::invalid_argument("conjugate_across_face: identity input");
  Mat3 m = face_reflection * r.matrix * face_reflection;
  Rotation3 out;
  out.matrix = m;
  axis_angle(m, out.axis, out.angle);
  return out;
}

void seed_mirrors(const RotationGroup& g, Vec3& n1, Vec3& n2, Vec3& n3) {
  n1 = normalized(cross(g.e1, g.eM));
  n2 = normalized(cross(g.eM, g.eV));
  n3 = normalized(cross(g.eV, g.e1));
}

std::vector<Mat3> reflection_group(const RotationGroup& g) {
  Vec3 n1, n2, n3;
  seed_mirrors(g, n1, n2, n3);
  std::vector<Mat3> gens;
  for (const Rotation3& r : g.elements)
    if (!r.identity) gens.push_back(r.matrix);
  gens.push_back(reflection(n1));
  std::vector<Mat3> els = closure(gens);
  if (static_cast<int>(els.size()) != 2 * g.order)
    throw std::runtime_error("unexpected reflection group order");
  return els;
}

namespace {

// Pick the auxiliary axis e_alpha (e_beta): an axis direction lying in the
// plane span(er, es), different from both er and es, with `target` inside the
// open angle between er and the axis, minimizing that angle.
bool pick_aux(const AxisSet& axes, const Vec3& er, const Vec3& es, const Vec3& target,
              Vec3& out, double& psi, int& fold) {
  Vec3 n = normalized(cross(er, es));
  bool have = false;
  for (const Axis& ax : axes.axes) {
    for (int sgn : {1, -1}) {
      Vec3 a = ax.dir * sgn;
      if (std::fabs(dot(a, n)) > 1e-9) continue;
      if (std::fabs(std::fabs(dot(a, er)) - 1) < 1e-9) continue;
      if (std::fabs(std::fabs(dot(a, es)) - 1) < 1e-9) continue;
      Vec3 co = solve3(from_columns(er, a, n), target);
      if (co.x > 1e-9 && co.y > 1e-9) {
        double ang = std::acos(std::clamp(dot(er, a), -1.0, 1.0));
        if (!have || ang < psi) {
          have = true;
          psi = ang;
          out = a;
          fold = ax.fold;
        }
      }
    }
  }
  return have;
}

ReferenceFrame frame_from_flag(const RotationGroup&, const AxisSet& axes, const Vec3& e1p,
                               const Vec3& eMp, const Vec3& eVp, int H, int K) {
  ReferenceFrame f;
  f.e1 = e1p;
  f.eM = eMp;
  f.eV = eVp;
  f.H = H;
  f.K = K;
  f.phiM = std::acos(std::clamp(dot(e1p, eMp), -1.0, 1.0));
  f.phiV = std::acos(std::clamp(dot(e1p, eVp), -1.0, 1.0));
  // e3 normal to the plane (e1, eM); e2 completes the right-handed triple.
  f.e3 = normalized(cross(e1p, eMp));
  f.e2 = cross(f.e3, f.e1);
  if (!pick_aux(axes, e1p, eMp, eMp, f.eAlpha, f.psiAlpha, f.foldAlpha))
    throw std::runtime_error("no candidate axis for e_alpha");
  if (!pick_aux(axes, e1p, eVp, eVp, f.eBeta, f.psiBeta, f.foldBeta))
    throw std::runtime_error("no candidate axis for e_beta");
  return f;
}

}  // namespace

ReferenceFrame reference_frame(Solid p) {
  // Build the solid's own context (closure from its Schlafli symbol) so that
  // xi1 points to one of its face centers.
  RotationGroup g = build_from_solid(p, group_of(p));
  AxisSet axes = axes_of(g);
  return frame_from_flag(g, axes, g.e1, g.eM, g.eV, g.H, g.K);
}

ReferenceFrame reference_frame_in_group(const RotationGroup& g, Solid p) {
  if (group_of(p) != g.kind)
    throw std::invalid_argument("solid does not belong to this group");
  AxisSet axes = axes_of(g);
  if (p == g.base || group_of(p) == GroupKind::T)
    return frame_from_flag(g, axes, g.e1, g.eM, g.eV, g.H, g.K);
  // Dual solid: same flag with face-center and vertex roles exchanged.
  auto [dp, dq, dK] = schlafli(p);
  return frame_from_flag(g, axes, g.eV, g.eM, g.e1, dp, dK);
}

std::vector<Mat3> k4_group() {
  return {Mat3::identity(), rotation({1, 0, 0}, kPi), rotation({0, 1, 0}, kPi),
          rotation({0, 0, 1}, kPi)};
}

}  // namespace nb
