#include "nb/loops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nb {

Vec3 GeneratingLoop::at(double t) const {
  int n = m();
  double s = t / T * n;
  s = std::fmod(s, static_cast<double>(n));
  if (s < 0) s += n;
  int j = static_cast<int>(std::floor(s));
  double f = s - j;
  return (1 - f) * pts[j % n] + f * pts[(j + 1) % n];
}

GeneratingLoop resample_loop(const GeneratingLoop& u, int m2) {
  if (m2 < 3) throw std::invalid_argument("resample_loop: need at least 3 samples");
  GeneratingLoop v = u;
  v.pts.clear();
  v.pts.reserve(m2);
  for (int i = 0; i < m2; ++i) v.pts.push_back(u.at(u.T * i / m2));
  return v;
}

SymOp compose(const SymOp& g1, const SymOp& g2) {
  return {g1.W * g2.W, g2.eps * g1.shift + g2.shift, g1.eps * g2.eps};
}

namespace {
int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

bool same_op(const SymOp& a, const SymOp& b, int m) {
  return a.eps == b.eps && mod(a.shift - b.shift, m) == 0 &&
         max_abs_diff(a.W, b.W) < 1e-9;
}
}  // namespace

std::vector<SymOp> sym_closure(const std::vector<SymOp>& gens, int m) {
  std::vector<SymOp> els{{identity3(), 0, 1}};
  std::vector<SymOp> frontier = els;
  while (!frontier.empty()) {
    std::vector<SymOp> next;
    for (const SymOp& f : frontier)
      for (const SymOp& g : gens) {
        SymOp h = compose(g, f);
        h.shift = mod(h.shift, m);
        bool known = false;
        for (const SymOp& e : els)
          if (same_op(e, h, m)) {
            known = true;
            break;
          }
        if (!known) {
          els.push_back(h);
          next.push_back(h);
        }
      }
    frontier = std::move(next);
    if (els.size() > 4096) throw std::runtime_error("sym_closure: group too large");
  }
  return els;
}

GeneratingLoop symmetrize(const GeneratingLoop& u, const std::vector<SymOp>& gens) {
  int n = u.m();
  std::vector<SymOp> grp = sym_closure(gens, n);
  GeneratingLoop out = u;
  for (int i = 0; i < n; ++i) {
    Vec3 s{0, 0, 0};
    for (const SymOp& g : grp) s = s + g.W * u.pts[mod(g.eps * i + g.shift, n)];
    out.pts[i] = s * (1.0 / grp.size());
  }
  return out;
}

double symmetry_defect(const GeneratingLoop& u, const std::vector<SymOp>& gens) {
  GeneratingLoop v = symmetrize(u, gens);
  double d = 0;
  for (int i = 0; i < u.m(); ++i) d = std::max(d, norm(v.pts[i] - u.pts[i]));
  return d;
}

std::vector<SymOp> abc_constraint(const ReferenceFrame& fr, int m, bool plus_rotation) {
  if (m % fr.H != 0) throw std::invalid_argument("abc_constraint: grid not divisible by H");
  Mat3 S3 = reflection(normalized(cross(fr.e1, fr.eM)));
  double ang = 2.0 * std::numbers::pi / fr.H;
  Mat3 R = rotation(fr.e1, plus_rotation ? ang : -ang);
  return {{S3, 0, -1}, {R, -m / fr.H, 1}};
}

std::vector<SymOp> tilde_constraint(const Mat3& mirror, const Mat3& rot, int M, int m) {
  if (m % M != 0) throw std::invalid_argument("tilde_constraint: grid not divisible by M");
  return {{mirror, 0, -1}, {rot, -m / M, 1}};
}

std::vector<SymOp> k4_constraint(int m) {
  if (m % 4 != 0) throw std::invalid_argument("k4_constraint: grid not divisible by 4");
  Mat3 S3 = identity3(), S2 = identity3();
  S3.a[8] = -1;
  S2.a[4] = -1;
  return {{S3, 0, -1}, {S2, m / 2, -1}};
}

namespace {
void attach_group(GeneratingLoop& u, const RotationGroup& g) {
  u.N = g.order;
  for (const Rotation3& r : g.elements) {
    if (r.identity) continue;
    u.rots.push_back(r.matrix);
    u.mats.push_back(r.matrix - identity3());
  }
}
}  // namespace

GeneratingLoop loop_from_nu(const ArchimedeanPolyhedron& p, const std::vector<int>& nu,
                            int n, double T, int m, double tau0) {
  int K = static_cast<int>(nu.size());
  GeneratingLoop u;
  u.T = T;
  u.pts.resize(m);
  for (int i = 0; i < m; ++i) {
    double tau = tau0 + static_cast<double>(n) * K * i / m;
    tau = std::fmod(tau, static_cast<double>(K));
    if (tau < 0) tau += K;
    int j = static_cast<int>(std::floor(tau)) % K;
    double s = tau - std::floor(tau);
    u.pts[i] = (1 - s) * p.vertices[nu[j]] + s * p.vertices[nu[(j + 1) % K]];
  }
  attach_group(u, build_rotation_group(p.kind));
  return u;
}

GeneratingLoop loop_from_sigma(const ChamberComplex& cc, const std::vector<int>& sigma,
                               int n, double T, int m) {
  std::vector<Vec3> c;
  for (int rep = 0; rep < n; ++rep)
    for (int k : sigma) c.push_back(cc.chambers()[k].center);
  int K = static_cast<int>(c.size());
  std::vector<double> cum(K + 1, 0.0);
  for (int j = 0; j < K; ++j) cum[j + 1] = cum[j] + norm(c[(j + 1) % K] - c[j]);
  double L = cum[K];
  GeneratingLoop u;
  u.T = T;
  u.pts.resize(m);
  for (int i = 0; i < m; ++i) {
    double s = L * i / m;
    int j = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin()) - 1;
    j = std::min(j, K - 1);
    double f = (s - cum[j]) / (cum[j + 1] - cum[j]);
    u.pts[i] = (1 - f) * c[j] + f * c[(j + 1) % K];
  }
  attach_group(u, cc.group());
  return u;
}

std::vector<std::vector<Vec3>> expand_orbit(const GeneratingLoop& u, const RotationGroup& g) {
  std::vector<std::vector<Vec3>> out(g.order, std::vector<Vec3>(u.m()));
  for (int j = 0; j < g.order; ++j)
    for (int i = 0; i < u.m(); ++i) out[j][i] = g.mat(j) * u.pts[i];
  return out;
}

GeneratingLoop k4_test_loop(double rho, double T, int m) {
  GeneratingLoop u;
  u.T = T;
  u.pts.resize(m);
  for (int i = 0; i < m; ++i) {
    // Four half circles; t = 0 at the midpoint of the first arc.
    double s = 4.0 * i / m + 0.5;
    s = std::fmod(s, 4.0);
    int arc = static_cast<int>(std::floor(s));
    double th = (s - arc) * std::numbers::pi;
    double sn = rho * std::sin(th), cs = rho * std::cos(th);
    switch (arc) {
      case 0: u.pts[i] = {sn, rho, cs}; break;
      case 1: u.pts[i] = {-sn, cs, -rho}; break;
      case 2: u.pts[i] = {sn, -rho, -cs}; break;
      default: u.pts[i] = {-sn, -cs, rho}; break;
    }
  }
  u.N = 4;
  for (const Mat3& R : k4_group()) {
    if (max_abs_diff(R, identity3()) < 1e-12) continue;
    u.rots.push_back(R);
    u.mats.push_back(R - identity3());
  }
  return u;
}

namespace {
double dist_to_axis(const Vec3& x, const Vec3& d) { return norm(x - dot(x, d) * d); }
}  // namespace

double min_distance_to_gamma(const GeneratingLoop& u, const AxisSet& axes) {
  double md = std::numeric_limits<double>::infinity();
  for (const Vec3& x : u.pts)
    for (const Axis& ax : axes.axes) md = std::min(md, dist_to_axis(x, ax.dir));
  return md;
}

double k4_min_distance_to_gamma(const GeneratingLoop& u) {
  double md = std::numeric_limits<double>::infinity();
  const Vec3 dirs[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const Vec3& x : u.pts)
    for (const Vec3& d : dirs) md = std::min(md, dist_to_axis(x, d));
  return md;
}

bool in_open_angle(const Vec3& x, const Vec3& er, const Vec3& es, const Vec3& n,
                   double tol) {
  Vec3 co = solve3(from_columns(er, es, n), x);
  return std::fabs(co.z) < 1e-9 && co.x > tol && co.y > tol;
}

}  // namespace nb
