#include "nb/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "nb/archimedean.hpp"

namespace nb {

namespace {
struct ChainNode {
  double t;
  int k;
};

int locate_nudged(const ChamberComplex& cc, const std::function<Vec3(double)>& f,
                  double t0, double t1, double& t) {
  int k = cc.locate_chamber(f(t));
  for (int j = 1; j <= 6 && k < 0; ++j) {
    double dt = (t1 - t0) * j * 1e-3;
    if (t + dt < t1 && (k = cc.locate_chamber(f(t + dt))) >= 0) t += dt;
    else if (t - dt > t0 && (k = cc.locate_chamber(f(t - dt))) >= 0) t -= dt;
  }
  return k;
}

void refine_chain(const ChamberComplex& cc, const std::function<Vec3(double)>& f,
                  double t0, int k0, double t1, int k1, int depth,
                  std::vector<ChainNode>& out) {
  if (k0 == k1) return;
  if (cc.face_between(k0, k1) >= 0 || depth > 48) {
    out.push_back({t1, k1});
    return;
  }
  double tm = 0.5 * (t0 + t1);
  int km = locate_nudged(cc, f, t0, t1, tm);
  if (km < 0 || km == k0) {
    refine_chain(cc, f, tm, k0, t1, k1, depth + 1, out);
  } else if (km == k1) {
    refine_chain(cc, f, t0, k0, tm, km, depth + 1, out);
  } else {
    refine_chain(cc, f, t0, k0, tm, km, depth + 1, out);
    refine_chain(cc, f, tm, km, t1, k1, depth + 1, out);
  }
}

// Crossing time of face `face` in [t0, t1]: bisection on the signed plane
// distance (positive on the c1 side).
double face_crossing_time(const ChamberComplex& cc, const std::function<Vec3(double)>& f,
                          int face, double t0, double t1, int from) {
  const ChamberFace& fc = cc.faces()[face];
  double sgn = fc.c1 == from ? 1.0 : -1.0;
  auto d = [&](double t) { return sgn * dot(fc.normal, f(t)); };
  double lo = t0, hi = t1;
  if (d(lo) < 0 || d(hi) > 0) return 0.5 * (t0 + t1);  // degenerate bracket
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (d(mid) >= 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

RawCrossings crossing_sequence(const ChamberComplex& cc, const GeneratingLoop& u) {
  int m = u.m();
  double T = u.T;
  auto f = [&](double t) { return u.at(t); };
  // Classify the samples; exact axis hits are an error, face hits are bridged.
  std::vector<std::pair<double, int>> located;
  std::vector<std::pair<double, int>> on_face;  // (time, face index)
  for (int i = 0; i < m; ++i) {
    const Vec3& x = u.pts[i];
    int k = cc.locate_chamber(x);
    double t = T * i / m;
    if (k >= 0) {
      located.push_back({t, k});
      continue;
    }
    auto loc = cc.locate(x);
    if (loc.kind == ChamberComplex::Locate::Kind::OnGamma)
      throw std::runtime_error("crossing_sequence: sample on Gamma at t = " +
                               std::to_string(t));
    on_face.push_back({t, loc.index});
  }
  if (located.empty())
    throw std::runtime_error("crossing_sequence: no sample inside a chamber");

  RawCrossings raw;
  raw.chambers.push_back(located.front().second);
  int nl = static_cast<int>(located.size());
  for (int i = 0; i < nl; ++i) {
    auto [t0, k0] = located[i];
    auto [t1, k1] = located[(i + 1) % nl];
    if (i + 1 == nl) t1 += T;  // wrap
    if (k0 == k1) {
      // Grazing contact if a face sample sits in between.
      for (auto& [tf, ff] : on_face)
        if ((tf > t0 && tf < t1) || (tf + T > t0 && tf + T < t1)) {
          Crossing c;
          c.t = std::fmod(tf, T);
          c.face = ff;
          c.from = c.to = k0;
          c.transversal = false;
          raw.events.push_back(c);
        }
      continue;
    }
    std::vector<ChainNode> chain{{t0, k0}};
    refine_chain(cc, f, t0, k0, t1, k1, 0, chain);
    for (std::size_t j = 1; j < chain.size(); ++j) {
      Crossing c;
      c.from = chain[j - 1].k;
      c.to = chain[j].k;
      c.face = cc.face_between(c.from, c.to);
      if (c.face < 0)
        throw std::runtime_error("crossing_sequence: non-adjacent transition");
      double tc = face_crossing_time(cc, f, c.face, chain[j - 1].t, chain[j].t, c.from);
      c.t = std::fmod(tc, T);
      // Transversality from the segment direction at the crossing.
      int seg = static_cast<int>(std::floor(tc / T * m)) % m;
      Vec3 v = (u.pts[(seg + 1) % m] - u.pts[seg]) / u.dt();
      double nv = norm(v);
      c.transversal = nv > 0 && std::fabs(dot(v, cc.faces()[c.face].normal)) / nv > 1e-10;
      raw.events.push_back(c);
      raw.chambers.push_back(c.to);
    }
  }
  // The wrap re-enters the starting chamber; drop the duplicate.
  if (raw.chambers.size() > 1 && raw.chambers.front() == raw.chambers.back())
    raw.chambers.pop_back();
  // A crossing detected on the wrap segment folds back to t ~ 0; restore
  // chronological order.
  std::stable_sort(raw.events.begin(), raw.events.end(),
                   [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
  return raw;
}

Invariant reduce_to_invariant(const RawCrossings& raw) {
  Invariant inv;
  std::vector<int> red = reduce_sigma(raw.chambers);
  if (red.size() < 3) {
    inv.trivial = true;
    return inv;
  }
  int p = minimal_period(red);
  inv.n = static_cast<int>(red.size()) / p;
  inv.sigma = normalize_cyclic(std::vector<int>(red.begin(), red.begin() + p));
  return inv;
}

Invariant extract_invariant(const ChamberComplex& cc, const GeneratingLoop& u) {
  return reduce_to_invariant(crossing_sequence(cc, u));
}

bool same_cone(const ChamberComplex& cc, const GeneratingLoop& a, const GeneratingLoop& b) {
  Invariant ia = extract_invariant(cc, a), ib = extract_invariant(cc, b);
  if (ia.trivial || ib.trivial) return ia.trivial == ib.trivial;
  return ia.n == ib.n && ia.sigma == ib.sigma;
}

bool condition_C_check(const ChamberComplex& cc, const std::vector<int>& sigma) {
  for (const Axis& ax : cc.axes().axes)
    for (int sgn : {1, -1}) {
      Vec3 d = ax.dir * sgn;
      bool all = true;
      for (int k : sigma)
        if (!cc.ray_in_closure(k, d)) {
          all = false;
          break;
        }
      if (all) return false;
    }
  return true;
}

std::vector<CollisionLocus> collision_loci(const ChamberComplex& cc,
                                           const std::vector<int>& sigma) {
  int K = static_cast<int>(sigma.size());
  // Opposite-ray index of the face between adjacent chambers a -> b, seen from a.
  auto face_slot = [&](int a, int b) {
    for (int j = 0; j < 3; ++j)
      if (cc.chambers()[a].neighbor[j] == b) return j;
    throw std::runtime_error("collision_loci: chambers not adjacent");
  };
  std::vector<int> third(K);       // S^k as face index
  std::vector<CollisionLocus> out(K);
  for (int k = 0; k < K; ++k) {
    int cur = sigma[k];
    int jprev = face_slot(cur, sigma[(k - 1 + K) % K]);  // S_k
    int jnext = face_slot(cur, sigma[(k + 1) % K]);      // S_{k+1}
    int jthird = 3 - jprev - jnext;
    third[k] = cc.chambers()[cur].face[jthird];
    // r_k = common ray of S_{k+1} and S^k: the ray opposite S_k.
    const Chamber& c = cc.chambers()[cur];
    Vec3 rays[3] = {c.v0, c.v1, c.v2};
    CollisionLocus& l = out[k];
    l.k = k;
    l.ray = rays[jprev];
    l.third_face = third[k];
    for (int a = 0; a < static_cast<int>(cc.axes().axes.size()); ++a)
      if (std::fabs(std::fabs(dot(l.ray, cc.axes().axes[a].dir)) - 1.0) < 1e-9)
        l.axis = a;
  }
  // k-tilde: smallest h >= 1 with r_k contained in the closure of the third
  // face at step k + h; earlier third faces must not meet closure(S^k).
  auto face_rays = [&](int fidx) {
    const ChamberFace& fc = cc.faces()[fidx];
    const Chamber& c = cc.chambers()[fc.c1];
    Vec3 rays[3] = {c.v0, c.v1, c.v2};
    int j = 0;
    for (; j < 3; ++j)
      if (c.face[j] == fidx) break;
    return std::pair<Vec3, Vec3>{rays[(j + 1) % 3], rays[(j + 2) % 3]};
  };
  auto ray_in_face = [&](int fidx, const Vec3& r) {
    auto [a, b] = face_rays(fidx);
    return norm(a - r) < 1e-9 || norm(b - r) < 1e-9;
  };
  auto faces_meet = [&](int f1, int f2) {
    if (f1 == f2) return true;
    auto [a1, b1] = face_rays(f1);
    auto [a2, b2] = face_rays(f2);
    for (const Vec3& x : {a1, b1})
      for (const Vec3& y : {a2, b2})
        if (norm(x - y) < 1e-9) return true;
    return false;
  };
  for (int k = 0; k < K; ++k) {
    for (int h = 1; h <= K; ++h) {
      int f2 = third[(k + h) % K];
      if (f2 == third[k] || ray_in_face(f2, out[k].ray)) {
        out[k].ktilde = k + h;
        out[k].star_ok = f2 != third[k];
        break;
      }
      if (faces_meet(third[k], f2)) {
        // closure(S^k) meets this face away from r_k: the recurrence is
        // degenerate, report it at this step with the star condition failing.
        out[k].ktilde = k + h;
        out[k].star_ok = false;
        break;
      }
    }
  }
  return out;
}

CrossingAudit crossing_count_audit(const ChamberComplex& cc, const GeneratingLoop& u,
                                   const std::vector<int>& sigma, int n) {
  RawCrossings raw = crossing_sequence(cc, u);
  CrossingAudit a;
  a.expected = n * static_cast<int>(sigma.size());
  int proper = 0;
  for (const Crossing& c : raw.events) {
    if (c.from == c.to) {
      // Tangential contact with a wall, re-entering the same chamber: it does
      // not change the chamber sequence, so it is reported but not counted.
      ++a.grazing;
    } else {
      ++proper;
      if (c.transversal) ++a.transversal;
    }
  }
  a.ok = a.transversal == a.expected && a.transversal == proper;
  return a;
}

namespace {
GroupKind kind_from_bodies(int N) {
  switch (N) {
    case 12: return GroupKind::T;
    case 24: return GroupKind::O;
    case 60: return GroupKind::I;
    default: throw std::invalid_argument("cone_membership_report: unknown group size");
  }
}
}  // namespace

ConeReport cone_membership_report(const GeneratingLoop& u, const ConeDescriptor& d) {
  ConeReport r;
  switch (d.kind) {
    case ConeDescriptor::Kind::Free: {
      RotationGroup g = build_rotation_group(kind_from_bodies(u.N));
      r.min_dist_gamma = min_distance_to_gamma(u, axes_of(g));
      r.member = r.min_dist_gamma > 0;
      r.detail = "free loop";
      return r;
    }
    case ConeDescriptor::Kind::K4: {
      r.min_dist_gamma = k4_min_distance_to_gamma(u);
      double p = u.at(0).x * u.at(u.T / 4).x;
      r.member = p < 0 && r.min_dist_gamma > 0;
      r.detail = "u11(0) u11(T/4) = " + std::to_string(p);
      return r;
    }
    case ConeDescriptor::Kind::KPi: {
      RotationGroup g = build_rotation_group(group_of(d.P));
      ReferenceFrame fr = reference_frame_in_group(g, d.P);
      r.min_dist_gamma = min_distance_to_gamma(u, axes_of(g));
      Vec3 n0 = normalized(cross(fr.e1, fr.eM));
      Vec3 n1 = normalized(cross(fr.e1, fr.eV));
      Vec3 u0 = u.at(0), uh = u.at(u.T / (2.0 * fr.H));
      bool ok0, ok1;
      switch (d.cone) {
        case 1:
          ok0 = in_open_angle(u0, fr.eM, fr.eAlpha, n0);
          ok1 = in_open_angle(uh, fr.e1, fr.eV, n1);
          break;
        case 2:
          ok0 = in_open_angle(u0, fr.eM, fr.eAlpha, n0);
          ok1 = in_open_angle(uh, fr.eV, fr.eBeta, n1);
          break;
        case 3:
          ok0 = in_open_angle(u0, fr.e1, fr.eM, n0);
          ok1 = in_open_angle(uh, fr.eV, fr.eBeta, n1);
          break;
        default:
          throw std::invalid_argument("cone_membership_report: cone index");
      }
      r.member = ok0 && ok1 && r.min_dist_gamma > 0;
      r.detail = std::string("angle(0): ") + (ok0 ? "in" : "out") +
                 ", angle(T/2H): " + (ok1 ? "in" : "out");
      return r;
    }
    case ConeDescriptor::Kind::Knu: {
      GroupKind kind = kind_from_bodies(u.N);
      RotationGroup g = build_rotation_group(kind);
      ChamberComplex cc(g);
      ArchimedeanPolyhedron p = build_qr(g);
      r.min_dist_gamma = min_distance_to_gamma(u, cc.axes());
      Invariant have = extract_invariant(cc, u);
      std::vector<int> want_sig = sigma_from_nu(cc, p, d.nu);
      int wp = minimal_period(want_sig);
      std::vector<int> want =
          normalize_cyclic(std::vector<int>(want_sig.begin(), want_sig.begin() + wp));
      int wn = d.n * (static_cast<int>(want_sig.size()) / wp);
      r.member = !have.trivial && have.sigma == want && have.n == wn &&
                 r.min_dist_gamma > 0;
      r.detail = "extracted n = " + std::to_string(have.n) +
                 ", K = " + std::to_string(have.sigma.size());
      return r;
    }
  }
  return r;
}

}  // namespace nb
