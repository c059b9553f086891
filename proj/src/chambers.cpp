#include "nb/chambers.hpp"

#include <algorithm>
#include <stdexcept>

namespace nb {

ChamberComplex::ChamberComplex(const RotationGroup& g) : group_(g) {
  refl_ = reflection_group(g);
  seed_mirrors(g, n1_, n2_, n3_);
  r1_ = reflection(n1_);
  r2_ = reflection(n2_);
  r3_ = reflection(n3_);
  axes_ = axes_of(g);
  int n = static_cast<int>(refl_.size());
  chambers_.resize(n);
  for (int k = 0; k < n; ++k) {
    Chamber& c = chambers_[k];
    c.index = k;
    c.element = k;
    c.v0 = refl_[k] * g.e1;
    c.v1 = refl_[k] * g.eM;
    c.v2 = refl_[k] * g.eV;
    c.basis = from_columns(c.v0, c.v1, c.v2);
    c.center = normalized(c.v0 + c.v1 + c.v2);
  }
  // Faces: for each chamber, the face opposite ray j is spanned by the other
  // two rays; its mirror image of the center locates the neighbor.
  for (int k = 0; k < n; ++k) {
    Chamber& c = chambers_[k];
    Vec3 rays[3] = {c.v0, c.v1, c.v2};
    for (int j = 0; j < 3; ++j) {
      Vec3 a = rays[(j + 1) % 3], b = rays[(j + 2) % 3];
      Vec3 nrm = normalized(cross(a, b));
      if (dot(nrm, rays[j]) < 0) nrm = -nrm;  // inward
      Vec3 p = c.center - 2.0 * dot(nrm, c.center) * nrm;
      int kk = locate_chamber(p);
      if (kk < 0) throw std::runtime_error("chamber adjacency failed");
      c.neighbor[j] = kk;
      if (kk > k) {
        ChamberFace f;
        f.index = static_cast<int>(faces_.size());
        f.normal = nrm;
        f.c1 = k;
        f.c2 = kk;
        faces_.push_back(f);
        c.face[j] = f.index;
      }
    }
  }
  // Fill in the face index on the second chamber of each pair.
  for (int k = 0; k < n; ++k) {
    Chamber& c = chambers_[k];
    for (int j = 0; j < 3; ++j) {
      if (c.face[j] >= 0) continue;
      int kk = c.neighbor[j];
      c.face[j] = face_between(kk, k) >= 0 ? face_between(kk, k) : -1;
      if (c.face[j] < 0) {
        for (const ChamberFace& f : faces_)
          if ((f.c1 == k && f.c2 == kk) || (f.c1 == kk && f.c2 == k)) c.face[j] = f.index;
      }
      if (c.face[j] < 0) throw std::runtime_error("face bookkeeping failed");
    }
  }
}

Vec3 ChamberComplex::coords(int k, const Vec3& x) const {
  return solve3(chambers_[k].basis, x);
}

int ChamberComplex::locate_chamber(const Vec3& x, double tol) const {
  for (int k = 0; k < static_cast<int>(chambers_.size()); ++k) {
    Vec3 co = coords(k, x);
    if (co.x > tol && co.y > tol && co.z > tol) return k;
  }
  return -1;
}

bool ChamberComplex::in_closure(int k, const Vec3& x, double tol) const {
  Vec3 co = coords(k, x);
  return co.x > -tol && co.y > -tol && co.z > -tol;
}

int ChamberComplex::face_between(int a, int b) const {
  for (int j = 0; j < 3; ++j)
    if (chambers_[a].neighbor[j] == b) return chambers_[a].face[j];
  return -1;
}

bool ChamberComplex::ray_in_closure(int k, const Vec3& d, double tol) const {
  return in_closure(k, d, tol);
}

ChamberComplex::Locate ChamberComplex::locate(const Vec3& x, double tol) const {
  double nx = norm(x);
  if (nx == 0) throw std::invalid_argument("locate: zero vector");
  Vec3 u = x / nx;
  // Axis check first: |dot| ~ 1 with an axis direction.
  for (int a = 0; a < static_cast<int>(axes_.axes.size()); ++a)
    if (std::fabs(std::fabs(dot(u, axes_.axes[a].dir)) - 1.0) < tol)
      return {Locate::Kind::OnGamma, a};
  int k = locate_chamber(u, tol);
  if (k >= 0) return {Locate::Kind::Chamber, k};
  // On a face: in the closure of exactly two chambers.
  std::vector<int> cl;
  for (int c = 0; c < static_cast<int>(chambers_.size()); ++c)
    if (in_closure(c, u, tol)) cl.push_back(c);
  if (cl.size() == 2) {
    int f = face_between(cl[0], cl[1]);
    if (f >= 0) return {Locate::Kind::Face, f};
  }
  // More than two closures meeting: the point sits on an edge of the fan, i.e.
  // on an axis of Gamma (tolerance band).
  if (cl.size() > 2) {
    for (int a = 0; a < static_cast<int>(axes_.axes.size()); ++a)
      if (std::fabs(std::fabs(dot(u, axes_.axes[a].dir)) - 1.0) < 1e-6)
        return {Locate::Kind::OnGamma, a};
    return {Locate::Kind::OnGamma, -1};
  }
  throw std::runtime_error("locate: point not classified");
}

ChamberComplex build_chamber_complex(const RotationGroup& g) { return ChamberComplex(g); }

Vec3 chamber_center(const Chamber& c) { return c.center; }

std::vector<int> normalize_cyclic(const std::vector<int>& s) {
  if (s.empty()) return s;
  std::vector<int> best = s;
  std::vector<int> cur = s;
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

std::vector<int> reduce_sigma(const std::vector<int>& seq) {
  std::vector<int> s = seq;
  bool changed = true;
  while (changed && s.size() > 2) {
    changed = false;
    std::vector<int> out;
    for (int x : s) {
      if (!out.empty() && out.back() == x) {
        changed = true;
        continue;
      }
      out.push_back(x);
    }
    if (out.size() > 1 && out.front() == out.back()) {
      out.pop_back();
      changed = true;
    }
    s = out;
    if (s.size() <= 2) break;
    int n = static_cast<int>(s.size());
    for (int h = 0; h < n; ++h) {
      if (s[(h - 1 + n) % n] == s[(h + 1) % n]) {
        int i1 = h, i2 = (h + 1) % n;
        std::vector<int> t;
        for (int i = 0; i < n; ++i)
          if (i != i1 && i != i2) t.push_back(s[i]);
        s = t;
        changed = true;
        break;
      }
    }
  }
  return s;
}

int minimal_period(const std::vector<int>& s) {
  int n = static_cast<int>(s.size());
  for (int p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = s[i] == s[i % p];
    if (ok) return p;
  }
  return n;
}

SigmaCheck validate_sigma(const ChamberComplex& cc, const std::vector<int>& seq, int n) {
  SigmaCheck out;
  if (seq.empty()) {
    out.violation = "empty sequence";
    return out;
  }
  int len = static_cast<int>(seq.size());
  for (int k = 0; k < len; ++k) {
    int cur = seq[k], nxt = seq[(k + 1) % len], prv = seq[(k - 1 + len) % len];
    if (cur < 0 || cur >= static_cast<int>(cc.chambers().size())) {
      out.violation = "chamber index out of range";
      out.index = k;
      return out;
    }
    if (cc.face_between(cur, nxt) < 0) {
      out.violation = "(II) consecutive chambers do not share a face";
      out.index = k;
      return out;
    }
    if (nxt == prv) {
      out.violation = "(II) D_{k+1} equals D_{k-1}";
      out.index = k;
      return out;
    }
  }
  // (III): no axis ray contained in every chamber closure.
  for (const Axis& ax : cc.axes().axes) {
    for (int sgn : {1, -1}) {
      Vec3 d = ax.dir * sgn;
      bool all = true;
      for (int k : seq)
        if (!cc.ray_in_closure(k, d)) {
          all = false;
          break;
        }
      if (all) {
        out.violation = "(III) all chambers share an axis ray";
        out.index = 0;
        return out;
      }
    }
  }
  out.ok = true;
  out.minimal_period = minimal_period(seq);
  out.multiplicity = len / out.minimal_period * n;
  out.normalized = normalize_cyclic(
      std::vector<int>(seq.begin(), seq.begin() + out.minimal_period));
  return out;
}

bool is_simple(const ChamberComplex& cc, const std::vector<int>& seq) {
  int len = static_cast<int>(seq.size());
  for (const Axis& ax : cc.axes().axes) {
    int wrap = 2 * ax.fold;  // H = 2|C|
    if (wrap + 1 > len) continue;  // too short to wrap
    for (int sgn : {1, -1}) {
      Vec3 d = ax.dir * sgn;
      for (int k = 0; k < len; ++k) {
        bool all = true;
        for (int j = 0; j <= wrap && all; ++j)
          all = cc.ray_in_closure(seq[(k + j) % len], d);
        if (!all) continue;
        // Condition a): the common intersection is exactly the ray r(R);
        // check no other axis ray is shared by the whole string.
        bool exact = true;
        for (const Axis& ax2 : cc.axes().axes) {
          for (int sg2 : {1, -1}) {
            Vec3 d2 = ax2.dir * sg2;
            if (norm(d2 - d) < 1e-9) continue;
            bool shared = true;
            for (int j = 0; j <= wrap && shared; ++j)
              shared = cc.ray_in_closure(seq[(k + j) % len], d2);
            if (shared) exact = false;
          }
        }
        if (exact) return false;  // forbidden string found
      }
    }
  }
  return true;
}

}  // namespace nb
