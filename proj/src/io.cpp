#include "nb/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

#include "nb/action.hpp"
#include "nb/catalog.hpp"
#include "nb/optimizer.hpp"
#include "nb/topology.hpp"

namespace nb {

namespace {
void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << body;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void export_csv(const GeneratingLoop& u, const RotationGroup* g, const std::string& path) {
  std::string out = "t,particle,x,y,z\n";
  int np = g ? g->order : 1;
  for (int i = 0; i < u.m(); ++i) {
    double t = u.T * i / u.m();
    for (int p = 0; p < np; ++p) {
      Vec3 x = g ? g->mat(p) * u.pts[i] : u.pts[i];
      out += fmt17(t) + "," + std::to_string(p + 1) + "," + fmt17(x.x) + "," +
             fmt17(x.y) + "," + fmt17(x.z) + "\n";
    }
  }
  write_file(path, out);
}

void export_loop_json(const GeneratingLoop& u, const std::string& path,
                      const std::string& cone_id) {
  nlohmann::json j;
  j["T"] = u.T;
  j["N"] = u.N;
  j["m"] = u.m();
  if (!cone_id.empty()) j["cone"] = cone_id;
  nlohmann::json pts = nlohmann::json::array();
  for (const Vec3& p : u.pts) pts.push_back({p.x, p.y, p.z});
  j["samples"] = std::move(pts);
  write_file(path, j.dump(1));
}

GeneratingLoop import_loop_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  GeneratingLoop u;
  u.T = j.at("T").get<double>();
  int N = j.at("N").get<int>();
  for (auto& p : j.at("samples"))
    u.pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  if (N == 4) {
    u.N = 4;
    for (const Mat3& R : k4_group()) {
      if (max_abs_diff(R, identity3()) < 1e-12) continue;
      u.rots.push_back(R);
      u.mats.push_back(R - identity3());
    }
  } else {
    GroupKind kind = N == 12 ? GroupKind::T : N == 24 ? GroupKind::O : GroupKind::I;
    if (N != 12 && N != 24 && N != 60)
      throw std::runtime_error("import_loop_json: unsupported N");
    RotationGroup g = build_rotation_group(kind);
    u.N = N;
    for (const Rotation3& r : g.elements) {
      if (r.identity) continue;
      u.rots.push_back(r.matrix);
      u.mats.push_back(r.matrix - identity3());
    }
  }
  return u;
}

int run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "config: cannot open " << path << "\n";
    return 2;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const std::exception& e) {
    std::cerr << "config: parse error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::string cone = j.at("cone").get<std::string>();
    const CatalogEntry& e = catalog_entry(cone);
    int n = j.value("n", 1);
    double T = j.value("T", 1.0);
    int m = j.value("m", 128 * static_cast<int>(e.path.size()));
    double alpha = j.value("alpha", 1.0);
    RotationGroup g = build_rotation_group(e.group);
    ArchimedeanPolyhedron p = build_qr(g);
    ChamberComplex cc(g);
    GeneratingLoop u = loop_from_nu(p, e.path, n, T, m, e.tau0);
    double av = analytic_test_action(p, e.path, n, T);
    std::cout << "cone " << cone << "  analytic A(v)/T^{1/3} = " << av / std::cbrt(T)
              << "\n";
    ActionBreakdown b = action(u, alpha);
    std::cout << "discrete action: K = " << b.kinetic << " U = " << b.potential
              << " scaledMin = " << b.scaledMin << "\n";
    if (j.value("minimize", false)) {
      FlowParams fp;
      if (j.contains("params")) {
        auto& q = j["params"];
        fp.step = q.value("step", fp.step);
        fp.maxSteps = q.value("maxSteps", fp.maxSteps);
        fp.gradTol = q.value("gradTol", fp.gradTol);
      }
      fp.alpha = alpha;
      GeneratingLoop u0 = scale_loop(u, b.lambdaStar);
      FlowTrace tr = gradient_flow(u0, fp);
      std::cout << "flow: " << tr.termination << " action = "
                << action(tr.final, alpha).total << "\n";
      u = tr.final;
    }
    Invariant inv = extract_invariant(cc, u);
    std::cout << "invariant: K_sigma = " << inv.sigma.size() << " n = " << inv.n
              << "\n";
    if (j.contains("out_csv")) export_csv(u, &g, j["out_csv"].get<std::string>());
    if (j.contains("out_json")) export_loop_json(u, j["out_json"].get<std::string>(), cone);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    std::cerr << "known cone ids:";
    for (const std::string& id : catalog_ids()) std::cerr << ' ' << id;
    std::cerr << "\n";
    return 2;
  }
}

}  // namespace nb
