#include "nb/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

namespace nb {

namespace {
constexpr double kDedup = 1e-9;
constexpr double kLexEps = 1e-6;  // well below the minimal coordinate gap (~3e-3)

bool lex_before(const Vec3& a, const Vec3& b) {
  const double pa[3] = {a.x, a.y, a.z};
  const double pb[3] = {b.x, b.y, b.z};
  for (int i = 0; i < 3; ++i) {
    if (pa[i] > pb[i] + kLexEps) return true;    // descending
    if (pa[i] < pb[i] - kLexEps) return false;
  }
  return false;
}
}  // namespace

int ArchimedeanPolyhedron::vertex_id(const Vec3& v) const {
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    if (norm(vertices[i] - v) < kDedup) return i;
  return -1;
}

int ArchimedeanPolyhedron::edge_class(int a, int b) const {
  auto it = edge_index.find({std::min(a, b), std::max(a, b)});
  return it == edge_index.end() ? 0 : edges[it->second].orbit;
}

std::vector<int> canonical_numbering(const std::vector<Vec3>& pts) {
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return lex_before(pts[a], pts[b]); });
  return idx;
}

Vec3 seed_vertex(const ChamberComplex& cc) {
  const RotationGroup& g = cc.group();
  Vec3 n1, n2, n3;
  seed_mirrors(g, n1, n2, n3);
  if (std::fabs(dot(n1, n2)) > 1e-12)
    throw std::runtime_error("seed_vertex: mirror planes Pi1, Pi2 not orthogonal");
  const Mat3& R1 = cc.mirror1();
  const Mat3& R2 = cc.mirror2();
  // Slerp along the arc e1 -> eV inside S3 (which R3 fixes pointwise).
  double ang = std::acos(std::clamp(dot(g.e1, g.eV), -1.0, 1.0));
  Vec3 u = normalized(g.eV - dot(g.eV, g.e1) * g.e1);
  auto qt = [&](double t) {
    return std::cos(t * ang) * g.e1 + std::sin(t * ang) * u;
  };
  auto f = [&](double t) {
    Vec3 q = qt(t);
    return norm(q - R1 * q) - norm(q - R2 * q);
  };
  double lo = 1e-12, hi = 1 - 1e-12;
  if (!(f(lo) < 0 && f(hi) > 0))
    throw std::runtime_error("seed_vertex: bisection not bracketed");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  Vec3 q = qt(0.5 * (lo + hi));
  if (norm(q - cc.mirror3() * q) > 1e-9)
    throw std::runtime_error("seed_vertex: q not fixed by R3");
  return q;
}

ArchimedeanPolyhedron build_qr(const RotationGroup& g) {
  ChamberComplex cc(g);
  ArchimedeanPolyhedron p;
  p.kind = g.kind;
  p.q = seed_vertex(cc);
  p.q1 = cc.mirror1() * p.q;
  p.q2 = cc.mirror2() * p.q;
  p.ell = norm(p.q - p.q1);
  if (std::fabs(p.ell - norm(p.q - p.q2)) > 1e-9)
    throw std::runtime_error("build_qr: unequal seed edges");

  // Vertex orbit, deduplicated and canonically numbered.
  std::vector<Vec3> orbit;
  for (const Rotation3& r : g.elements) {
    Vec3 v = r.matrix * p.q;
    bool dup = false;
    for (const Vec3& w : orbit)
      if (norm(v - w) < kDedup) {
        dup = true;
        break;
      }
    if (!dup) orbit.push_back(v);
  }
  if (static_cast<int>(orbit.size()) != g.order)
    throw std::runtime_error("build_qr: unexpected vertex count");
  std::vector<int> perm = canonical_numbering(orbit);
  p.vertices.resize(orbit.size());
  for (std::size_t i = 0; i < orbit.size(); ++i) p.vertices[i] = orbit[perm[i]];
  p.iq = p.vertex_id(p.q);

  // Edges: orbits of [q, q1] (class 1) and [q, q2] (class 2).
  auto vid = [&](const Vec3& v) {
    int i = p.vertex_id(v);
    if (i < 0) throw std::runtime_error("build_qr: orbit point missing");
    return i;
  };
  for (int cls : {1, 2}) {
    const Vec3& qq = cls == 1 ? p.q1 : p.q2;
    for (const Rotation3& r : g.elements) {
      int a = vid(r.matrix * p.q), b = vid(r.matrix * qq);
      std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = p.edge_index.find(key);
      if (it != p.edge_index.end()) {
        if (p.edges[it->second].orbit != cls)
          throw std::runtime_error("build_qr: edge orbit conflict");
        continue;
      }
      p.edge_index[key] = static_cast<int>(p.edges.size());
      p.edges.push_back({key.first, key.second, cls});
    }
  }
  if (static_cast<int>(p.edges.size()) != 2 * g.order)
    throw std::runtime_error("build_qr: unexpected edge count");
  p.adj.assign(p.vertices.size(), {});
  for (const QEdge& e : p.edges) {
    p.adj[e.a].push_back(e.b);
    p.adj[e.b].push_back(e.a);
  }
  for (auto& a : p.adj) std::sort(a.begin(), a.end());

  // Faces: orbit of the seed square, plus the rotation-orbit polygons F1
  // (H-gon about xi1) and F2 (about the vertex axis OV).
  std::set<std::vector<int>> seen;
  auto add_face_orbit = [&](const std::vector<Vec3>& seed, int type) {
    for (const Rotation3& r : g.elements) {
      std::vector<int> f;
      for (const Vec3& v : seed) f.push_back(vid(r.matrix * v));
      std::vector<int> key = f;
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) p.faces.push_back({f, type});
    }
  };
  // Seed square in cyclic order (R1 and R2 commute since Pi1 is orthogonal to Pi2).
  add_face_orbit({p.q, p.q1, cc.mirror1() * p.q2, p.q2}, 0);
  std::vector<Vec3> f1;
  Mat3 rotH = rotation(g.e1, 2.0 * std::numbers::pi / g.H);
  Vec3 v = p.q;
  for (int j = 0; j < g.H; ++j) {
    f1.push_back(v);
    v = rotH * v;
  }
  add_face_orbit(f1, 1);
  int foldV = 0;
  for (const Axis& ax : axes_of(g).axes)
    if (std::fabs(std::fabs(dot(ax.dir, g.eV)) - 1.0) < 1e-9) foldV = ax.fold;
  if (foldV == 0) throw std::runtime_error("build_qr: no axis through eV");
  std::vector<Vec3> f2;
  Mat3 rotV = rotation(g.eV, 2.0 * std::numbers::pi / foldV);
  v = p.q;
  for (int j = 0; j < foldV; ++j) {
    f2.push_back(v);
    v = rotV * v;
  }
  add_face_orbit(f2, 2);
  return p;
}

int edge_orbit_class(const ArchimedeanPolyhedron& p, int a, int b) {
  int c = p.edge_class(a, b);
  if (c == 0) throw std::invalid_argument("edge_orbit_class: not an edge");
  return c;
}

std::vector<int> vertex_configuration(const ArchimedeanPolyhedron& p, int v) {
  // Incident faces ordered by angle of their centroid in the tangent plane at v.
  Vec3 d = normalized(p.vertices[v]);
  Vec3 t1 = std::fabs(d.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  t1 = normalized(t1 - dot(t1, d) * d);
  Vec3 t2 = cross(d, t1);
  std::vector<std::pair<double, int>> inc;
  for (const QFace& f : p.faces) {
    if (std::find(f.verts.begin(), f.verts.end(), v) == f.verts.end()) continue;
    Vec3 c{0, 0, 0};
    for (int i : f.verts) c = c + p.vertices[i];
    c = c * (1.0 / f.verts.size()) - p.vertices[v];
    inc.push_back({std::atan2(dot(c, t2), dot(c, t1)), static_cast<int>(f.verts.size())});
  }
  std::sort(inc.begin(), inc.end());
  std::vector<int> cyc;
  for (auto& pr : inc) cyc.push_back(pr.second);
  // Normalize over rotations and both orientations.
  std::vector<int> best = cyc;
  for (int rev = 0; rev < 2; ++rev) {
    std::vector<int> cur = cyc;
    if (rev) std::reverse(cur.begin(), cur.end());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cur < best) best = cur;
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    }
  }
  return best;
}

NuCheck validate_nu(const ArchimedeanPolyhedron& p, const std::vector<int>& nu, int n) {
  NuCheck out;
  if (nu.empty()) {
    out.violation = "empty sequence";
    return out;
  }
  int len = static_cast<int>(nu.size());
  for (int k = 0; k < len; ++k) {
    int a = nu[k], b = nu[(k + 1) % len];
    if (a < 0 || a >= static_cast<int>(p.vertices.size())) {
      out.violation = "vertex index out of range";
      out.index = k;
      return out;
    }
    if (p.edge_class(a, b) == 0) {
      out.violation = "[i] consecutive vertices are not an edge";
      out.index = k;
      return out;
    }
  }
  std::set<int> used(nu.begin(), nu.end());
  for (const QFace& f : p.faces) {
    std::set<int> fv(f.verts.begin(), f.verts.end());
    if (std::includes(fv.begin(), fv.end(), used.begin(), used.end())) {
      out.violation = "[ii] contained in the closure of a single face";
      out.index = 0;
      return out;
    }
  }
  out.ok = true;
  out.minimal_period = minimal_period(nu);
  out.multiplicity = len / out.minimal_period * n;
  return out;
}

namespace {
// Chamber of f(t), nudging t when the sample sits on a mirror plane.
int locate_robust(const ChamberComplex& cc, const std::function<Vec3(double)>& f,
                  double t0, double t1, double& t) {
  int k = cc.locate_chamber(f(t));
  for (int j = 1; j <= 6 && k < 0; ++j) {
    double dt = (t1 - t0) * j * 1e-3;
    if (t + dt < t1 && (k = cc.locate_chamber(f(t + dt))) >= 0) t += dt;
    else if (t - dt > t0 && (k = cc.locate_chamber(f(t - dt))) >= 0) t -= dt;
  }
  return k;
}

void refine_walk(const ChamberComplex& cc, const std::function<Vec3(double)>& f,
                 double t0, int k0, double t1, int k1, int depth, std::vector<int>& out) {
  if (k0 == k1) return;
  if (cc.face_between(k0, k1) >= 0 || depth > 48) {
    out.push_back(k1);
    return;
  }
  double tm = 0.5 * (t0 + t1);
  int km = locate_robust(cc, f, t0, t1, tm);
  if (km < 0 || km == k0) {
    refine_walk(cc, f, tm, k0, t1, k1, depth + 1, out);
  } else if (km == k1) {
    refine_walk(cc, f, t0, k0, tm, km, depth + 1, out);
  } else {
    refine_walk(cc, f, t0, k0, tm, km, depth + 1, out);
    refine_walk(cc, f, tm, km, t1, k1, depth + 1, out);
  }
}
}  // namespace

std::vector<int> sigma_from_nu(const ChamberComplex& cc, const ArchimedeanPolyhedron& p,
                               const std::vector<int>& nu) {
  int K = static_cast<int>(nu.size());
  auto point = [&](double tau) {
    tau = std::fmod(tau, static_cast<double>(K));
    if (tau < 0) tau += K;
    int j = static_cast<int>(std::floor(tau));
    double s = tau - j;
    return (1 - s) * p.vertices[nu[j % K]] + s * p.vertices[nu[(j + 1) % K]];
  };
  // Coarse samples offset from the vertices (which lie on mirror planes), then
  // recursive subdivision until consecutive chambers are face-adjacent.
  const int per = 64;
  int m = per * K;
  std::vector<std::pair<double, int>> samples;
  for (int i = 0; i <= m; ++i) {
    double tau = 0.25 + static_cast<double>(K) * i / m;
    int k = cc.locate_chamber(point(tau));
    if (k < 0) continue;  // on a mirror plane; bridged by neighbors
    if (samples.empty() || samples.back().second != k) samples.push_back({tau, k});
  }
  if (samples.empty()) throw std::runtime_error("sigma_from_nu: no chamber samples");
  std::vector<int> seq{samples[0].second};
  for (std::size_t i = 1; i < samples.size(); ++i)
    refine_walk(cc, point, samples[i - 1].first, samples[i - 1].second,
                samples[i].first, samples[i].second, 0, seq);
  return reduce_sigma(seq);
}

std::vector<int> nu_from_sigma(const ChamberComplex& cc, const ArchimedeanPolyhedron& p,
                               const std::vector<int>& sigma) {
  // Chamber W * D0 carries the vertex W * q; collapse consecutive duplicates
  // (chambers adjacent across S3-type faces share their vertex).
  std::vector<int> nu;
  for (int k : sigma) {
    int v = p.vertex_id(cc.refl()[k] * p.q);
    if (v < 0) throw std::runtime_error("nu_from_sigma: vertex not found");
    if (nu.empty() || nu.back() != v) nu.push_back(v);
  }
  while (nu.size() > 1 && nu.front() == nu.back()) nu.pop_back();
  return nu;
}

}  // namespace nb
