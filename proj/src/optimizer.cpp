#include "nb/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nb/kernels.hpp"

namespace nb {

namespace {
double min_pair_distance(const GeneratingLoop& u) {
  double md = std::numeric_limits<double>::infinity();
  for (const Vec3& p : u.pts)
    for (const Mat3& M : u.mats) md = std::min(md, norm(M * p));
  return md;
}
}  // namespace

double loop_diameter(const GeneratingLoop& u) {
  double d = 0;
  for (std::size_t i = 0; i < u.pts.size(); ++i)
    for (std::size_t j = i + 1; j < u.pts.size(); ++j)
      d = std::max(d, norm(u.pts[i] - u.pts[j]));
  return d;
}

std::vector<Vec3> discrete_gradient(const GeneratingLoop& u, double alpha,
                                    const std::vector<SymOp>& gens) {
  int m = u.m();
  double dt = u.dt();
  double half_n = 0.5 * u.N;
  std::vector<Vec3> g(m, Vec3{0, 0, 0});
  // Kinetic part: A_K = (N/2dt) sum |u_{i+1} - u_i|^2.
  double ck = 2.0 * half_n / dt;
  for (int j = 0; j < m; ++j)
    g[j] = ck * (2.0 * u.pts[j] - u.pts[(j - 1 + m) % m] - u.pts[(j + 1) % m]);
  // Potential part.
  if (alpha == 1.0) {
    kernels::potential_grad_alpha1(u.mats, u.pts.data(), m, g.data(), half_n * dt);
  } else {
    double c = half_n * dt * alpha;
    for (int j = 0; j < m; ++j) {
      Vec3 acc{0, 0, 0};
      for (const Mat3& M : u.mats) {
        Vec3 y = M * u.pts[j];
        double r = norm(y);
        acc -= std::pow(r, -alpha - 2.0) * (M.transposed() * y);
      }
      g[j] += c * acc;
    }
  }
  if (!gens.empty()) {
    // Project onto the symmetric subspace (the constraint ops are isometries of
    // loop space, so averaging the gradient is the orthogonal projection).
    GeneratingLoop gl = u;
    gl.pts = g;
    g = symmetrize(gl, gens).pts;
  }
  return g;
}

FlowTrace gradient_flow(const GeneratingLoop& u0, const FlowParams& params,
                        const std::vector<SymOp>& gens) {
  FlowTrace tr;
  GeneratingLoop u = gens.empty() ? u0 : symmetrize(u0, gens);
  double floor_dist = params.minDistFloor >= 0
                          ? params.minDistFloor
                          : 1e-4 * loop_diameter(u);
  double step = params.step;
  double a = action(u, params.alpha).total;
  double prev_a = a;
  std::string reason = "maxSteps";
  for (int it = 0; it < params.maxSteps; ++it) {
    double md = min_pair_distance(u);
    std::vector<Vec3> g = discrete_gradient(u, params.alpha, gens);
    double g2 = 0;
    for (const Vec3& v : g) g2 += norm2(v);
    double gn = std::sqrt(g2);
    if (it % params.auditEvery == 0 || gn < params.gradTol || md < floor_dist)
      tr.records.push_back({it, a, gn, md});
    if (md < floor_dist) {
      reason = "minDistFloor";
      break;
    }
    if (gn < params.gradTol) {
      reason = "gradTol";
      break;
    }
    // Trust region: no sample may move further than a fraction of the current
    // minimum pair distance, so a single step can never hop across the
    // collision set (the wall must be climbed, which monotone descent forbids).
    double gmax = 0;
    for (const Vec3& v : g) gmax = std::max(gmax, norm(v));
    double cap = gmax > 0 ? 0.25 * md / gmax : step;
    // Armijo backtracking on the discrete action.
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      double s = std::min(step, cap);
      GeneratingLoop v = u;
      for (int j = 0; j < u.m(); ++j) v.pts[j] = u.pts[j] - s * g[j];
      double av;
      try {
        av = action(v, params.alpha).total;
      } catch (const std::exception&) {
        step *= params.backtrack;
        continue;
      }
      if (av <= a - 1e-4 * s * g2) {
        u = std::move(v);
        a = av;
        accepted = true;
        ++tr.acceptedSteps;
        step = std::min(step / params.backtrack, params.step * 1e6);
        break;
      }
      step *= params.backtrack;
    }
    if (!accepted) {
      reason = "stalled";
      break;
    }
    if (a > prev_a + 1e-12) tr.monotone = false;
    prev_a = a;
  }
  tr.records.push_back({tr.acceptedSteps, a, 0, min_pair_distance(u)});
  tr.final = std::move(u);
  tr.termination = reason;
  return tr;
}

ResidualReport verify_solution(const GeneratingLoop& u, double alpha) {
  int m = u.m();
  double dt = u.dt();
  ResidualReport r;
  double emin = std::numeric_limits<double>::infinity(), emax = -emin, eabs = 0;
  for (int j = 0; j < m; ++j) {
    Vec3 acc = (u.pts[(j + 1) % m] - 2.0 * u.pts[j] + u.pts[(j - 1 + m) % m]) / (dt * dt);
    Vec3 force{0, 0, 0};
    double pot = 0;
    for (const Mat3& M : u.mats) {
      Vec3 y = M * u.pts[j];
      double rr = norm(y);
      force -= 0.5 * alpha * std::pow(rr, -alpha - 2.0) * (M.transposed() * y);
      pot += std::pow(rr, -alpha);
    }
    r.elResidual = std::max(r.elResidual, norm(acc - force));
    Vec3 vel = (u.pts[(j + 1) % m] - u.pts[(j - 1 + m) % m]) / (2.0 * dt);
    double e = 0.5 * u.N * norm2(vel) - 0.5 * u.N * pot;
    emin = std::min(emin, e);
    emax = std::max(emax, e);
    eabs = std::max(eabs, std::fabs(e));
  }
  r.energyDrift = eabs > 0 ? (emax - emin) / eabs : 0;
  return r;
}

std::vector<AlphaSummary> alpha_sweep(const GeneratingLoop& u0,
                                      const std::vector<double>& alphas,
                                      const FlowParams& params,
                                      const std::vector<SymOp>& gens,
                                      std::vector<GeneratingLoop>* finals) {
  std::vector<AlphaSummary> out;
  GeneratingLoop warm = u0;
  for (double al : alphas) {
    AlphaSummary s;
    s.alpha = al;
    FlowParams p = params;
    p.alpha = al;
    try {
      FlowTrace tr = gradient_flow(warm, p, gens);
      warm = tr.final;
      s.breakdown = action(warm, al);
      for (const Vec3& x : warm.pts) s.supNorm = std::max(s.supNorm, norm(x));
      double len = 0;
      for (int i = 0; i < warm.m(); ++i)
        len += norm(warm.pts[(i + 1) % warm.m()] - warm.pts[i]);
      s.meanSpeed = len / warm.T;
      s.converged = tr.termination == "gradTol" || tr.termination == "maxSteps";
      s.note = tr.termination;
      if (finals) finals->push_back(warm);
    } catch (const std::exception& e) {
      s.note = std::string("failed: ") + e.what();
      if (finals) finals->push_back(warm);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace nb
