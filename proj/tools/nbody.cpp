// Command-line entry point tying the library modules together.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nb/action.hpp"
#include "nb/archimedean.hpp"
#include "nb/bounds.hpp"
#include "nb/catalog.hpp"
#include "nb/chambers.hpp"
#include "nb/groups.hpp"
#include "nb/io.hpp"
#include "nb/kepler.hpp"
#include "nb/kernels.hpp"
#include "nb/loops.hpp"
#include "nb/optimizer.hpp"
#include "nb/tables.hpp"
#include "nb/topology.hpp"

using nlohmann::json;

namespace {

json vec_json(const nb::Vec3& v) { return json::array({v.x, v.y, v.z}); }

nb::GroupKind parse_group_or_die(const std::string& s) {
  nb::GroupKind k;
  if (!nb::parse_group(s, k)) {
    std::cerr << "unknown group '" << s << "' (expected T, O, or I)\n";
    std::exit(2);
  }
  return k;
}

int cmd_groups(const std::string& name) {
  nb::RotationGroup g = nb::build_rotation_group(parse_group_or_die(name));
  nb::AxisSet ax = nb::axes_of(g);
  json j;
  j["group"] = nb::to_string(g.kind);
  j["order"] = g.order;
  j["H"] = g.H;
  j["K"] = g.K;
  json census = json::object();
  for (const nb::Axis& a : ax.axes) census[std::to_string(a.fold)] =
      census.value(std::to_string(a.fold), 0) + 1;
  j["axis_census"] = census;
  json axes = json::array();
  for (const nb::Axis& a : ax.axes)
    axes.push_back({{"dir", vec_json(a.dir)}, {"fold", a.fold},
                    {"subgroup", a.subgroup}});
  j["axes"] = axes;
  json els = json::array();
  for (const nb::Rotation3& r : g.elements) {
    json e;
    e["matrix"] = std::vector<double>(r.matrix.a.begin(), r.matrix.a.end());
    if (!r.identity) {
      e["axis"] = vec_json(r.axis);
      e["angle"] = r.angle;
    }
    els.push_back(e);
  }
  j["elements"] = els;
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_chambers(const std::string& name) {
  nb::RotationGroup g = nb::build_rotation_group(parse_group_or_die(name));
  nb::ChamberComplex cc(g);
  json j;
  j["group"] = nb::to_string(g.kind);
  j["chambers"] = json::array();
  for (const nb::Chamber& c : cc.chambers())
    j["chambers"].push_back({{"index", c.index},
                             {"element", c.element},
                             {"rays", {vec_json(c.v0), vec_json(c.v1), vec_json(c.v2)}},
                             {"center", vec_json(c.center)},
                             {"neighbors", {c.neighbor[0], c.neighbor[1], c.neighbor[2]}}});
  j["faces"] = json::array();
  for (const nb::ChamberFace& f : cc.faces())
    j["faces"].push_back({{"index", f.index}, {"normal", vec_json(f.normal)},
                          {"chambers", {f.c1, f.c2}}});
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_qr_dump(const std::string& name) {
  nb::RotationGroup g = nb::build_rotation_group(parse_group_or_die(name));
  nb::ArchimedeanPolyhedron p = nb::build_qr(g);
  json j;
  j["group"] = nb::to_string(p.kind);
  j["edge_length"] = p.ell;
  j["seed_vertex"] = vec_json(p.q);
  j["vertices"] = json::array();
  for (const nb::Vec3& v : p.vertices) j["vertices"].push_back(vec_json(v));
  j["edges"] = json::array();
  for (const nb::QEdge& e : p.edges)
    j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"orbit", e.orbit}});
  j["faces"] = json::array();
  for (const nb::QFace& f : p.faces)
    j["faces"].push_back({{"verts", f.verts}, {"type", f.type}});
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_qr_catalog() {
  json j = json::array();
  for (const std::string& id : nb::catalog_ids()) {
    const nb::CatalogEntry& e = nb::catalog_entry(id);
    json r;
    r["id"] = e.id;
    r["group"] = nb::to_string(e.group);
    r["path"] = e.path;
    r["N1"] = e.N1;
    r["N2"] = e.N2;
    r["K_sigma"] = e.Ksig;
    if (e.is_min) {
      r["cone"] = e.cone;
    } else {
      r["M"] = e.M;
    }
    r["analytic_action"] = nb::analytic_action_value(e.group, e.N1, e.N2, 1.0);
    j.push_back(r);
  }
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_action(const std::string& file, double alpha) {
  nb::GeneratingLoop u = nb::import_loop_json(file);
  nb::ActionBreakdown b = nb::action(u, alpha);
  json j;
  j["alpha"] = b.alpha;
  j["kinetic"] = b.kinetic;
  j["potential"] = b.potential;
  j["total"] = b.total;
  j["lambda_star"] = b.lambdaStar;
  j["scaled_min"] = b.scaledMin;
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_tables(const std::string& which, bool check) {
  nb::TableSet t = nb::emit_tables();
  if (!which.empty()) {
    nb::TableSet f;
    for (const nb::TableCell& c : t.cells)
      if (c.table == which) f.cells.push_back(c);
    for (const nb::Inequality& q : t.inequalities)
      if (q.label.find("table" + which) != std::string::npos)
        f.inequalities.push_back(q);
    f.cellsOk = t.cellsOk;
    f.inequalitiesOk = t.inequalitiesOk;
    std::cout << nb::format_tables(f, check);
  } else {
    std::cout << nb::format_tables(t, check);
  }
  json j;
  j["cells_ok"] = t.cellsOk;
  j["inequalities_ok"] = t.inequalitiesOk;
  std::cout << j.dump() << "\n";
  if (check && (!t.cellsOk || !t.inequalitiesOk)) return 1;
  return 0;
}

int cmd_invariant(const std::string& file) {
  nb::GeneratingLoop u = nb::import_loop_json(file);
  nb::GroupKind kind = u.N == 12   ? nb::GroupKind::T
                       : u.N == 24 ? nb::GroupKind::O
                                   : nb::GroupKind::I;
  if (u.N != 12 && u.N != 24 && u.N != 60) {
    std::cerr << "invariant extraction needs a rotation-group loop (N = 12/24/60)\n";
    return 2;
  }
  nb::RotationGroup g = nb::build_rotation_group(kind);
  nb::ChamberComplex cc(g);
  nb::Invariant inv = nb::extract_invariant(cc, u);
  json j;
  j["sigma"] = inv.sigma;
  j["n"] = inv.n;
  j["K_sigma"] = inv.sigma.size();
  j["trivial"] = inv.trivial;
  if (!inv.trivial) {
    j["simple"] = nb::is_simple(cc, inv.sigma);
    j["condition_C"] = nb::condition_C_check(cc, inv.sigma);
    json loci = json::array();
    for (const nb::CollisionLocus& l : nb::collision_loci(cc, inv.sigma))
      loci.push_back({{"k", l.k}, {"axis", l.axis}, {"ray", vec_json(l.ray)},
                      {"third_face", l.third_face}, {"k_tilde", l.ktilde},
                      {"star_ok", l.star_ok}});
    j["loci"] = loci;
  }
  std::cout << j.dump(1) << "\n";
  return 0;
}

// Build a loop for a cone given a catalog id or a loop JSON path.
nb::GeneratingLoop cone_loop(const std::string& cone, int m, std::string* id_out) {
  std::ifstream probe(cone);
  if (probe.good()) {
    if (id_out) *id_out = "";
    return nb::import_loop_json(cone);
  }
  const nb::CatalogEntry& e = nb::catalog_entry(cone);
  if (id_out) *id_out = e.id;
  nb::RotationGroup g = nb::build_rotation_group(e.group);
  nb::ArchimedeanPolyhedron p = nb::build_qr(g);
  if (m <= 0) m = 128 * static_cast<int>(e.path.size());
  return nb::loop_from_nu(p, e.path, 1, 1.0, m, e.tau0);
}

void load_flow_params(const std::string& file, nb::FlowParams& fp) {
  if (file.empty()) return;
  std::ifstream f(file);
  if (!f) throw std::runtime_error("cannot open params file: " + file);
  json q = json::parse(f);
  fp.step = q.value("step", fp.step);
  fp.maxSteps = q.value("maxSteps", fp.maxSteps);
  fp.gradTol = q.value("gradTol", fp.gradTol);
  fp.backtrack = q.value("backtrack", fp.backtrack);
  fp.minDistFloor = q.value("minDistFloor", fp.minDistFloor);
  fp.auditEvery = q.value("auditEvery", fp.auditEvery);
}

json trace_json(const nb::FlowTrace& tr, double alpha) {
  json j;
  j["termination"] = tr.termination;
  j["monotone"] = tr.monotone;
  j["accepted_steps"] = tr.acceptedSteps;
  j["final_action"] = nb::action(tr.final, alpha).total;
  json recs = json::array();
  for (const nb::FlowRecord& r : tr.records)
    recs.push_back({{"step", r.step}, {"action", r.action},
                    {"grad_norm", r.gradNorm}, {"min_dist_gamma", r.minDistGamma}});
  j["records"] = recs;
  return j;
}

int cmd_minimize(const std::string& cone, double alpha, int m, int refine,
                 const std::string& params_file, const std::string& out_csv,
                 const std::string& out_json) {
  std::string id;
  nb::GeneratingLoop u = cone_loop(cone, m, &id);
  nb::FlowParams fp;
  fp.alpha = alpha;
  load_flow_params(params_file, fp);
  nb::ActionBreakdown b = nb::action(u, alpha);
  nb::GeneratingLoop u0 = alpha == 1.0 ? nb::scale_loop(u, b.lambdaStar) : u;
  nb::FlowTrace tr = nb::gradient_flow(u0, fp);
  // Cascadic refinement: double the grid and re-flow from the interpolant.
  // Coarse grids alone can step across near-axis passages that the sampled
  // potential does not resolve; warm-started refinement keeps the flow honest.
  json stages = json::array();
  stages.push_back({{"grid", tr.final.m()},
                    {"action", nb::action(tr.final, alpha).total},
                    {"termination", tr.termination}});
  for (int r = 0; r < refine; ++r) {
    nb::GeneratingLoop uf = nb::resample_loop(tr.final, 2 * tr.final.m());
    tr = nb::gradient_flow(uf, fp);
    stages.push_back({{"grid", tr.final.m()},
                      {"action", nb::action(tr.final, alpha).total},
                      {"termination", tr.termination}});
  }
  json j = trace_json(tr, alpha);
  if (refine > 0) j["stages"] = stages;
  if (!id.empty()) j["cone"] = id;
  std::cout << j.dump(1) << "\n";
  if (!out_csv.empty()) {
    if (u.N == 4) {
      nb::export_csv(tr.final, nullptr, out_csv);
    } else {
      nb::RotationGroup g = nb::build_rotation_group(
          u.N == 12 ? nb::GroupKind::T : u.N == 24 ? nb::GroupKind::O : nb::GroupKind::I);
      nb::export_csv(tr.final, &g, out_csv);
    }
  }
  if (!out_json.empty()) nb::export_loop_json(tr.final, out_json, id);
  return 0;
}

int cmd_sweep_alpha(const std::string& cone, const std::vector<double>& alphas, int m,
                    const std::string& params_file) {
  std::string id;
  nb::GeneratingLoop u = cone_loop(cone, m, &id);
  nb::FlowParams fp;
  load_flow_params(params_file, fp);
  nb::ActionBreakdown b = nb::action(u, 1.0);
  nb::GeneratingLoop u0 = nb::scale_loop(u, b.lambdaStar);
  std::vector<nb::AlphaSummary> res = nb::alpha_sweep(u0, alphas, fp);
  json j = json::array();
  for (const nb::AlphaSummary& s : res)
    j.push_back({{"alpha", s.alpha}, {"action", s.breakdown.total},
                 {"kinetic", s.breakdown.kinetic}, {"potential", s.breakdown.potential},
                 {"sup_norm", s.supNorm}, {"mean_speed", s.meanSpeed},
                 {"converged", s.converged}, {"note", s.note}});
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_kepler(int grid) {
  std::vector<nb::RatioSample> rs = nb::ratio_scan(grid);
  double mx = 0, arg = 0;
  std::cout << "theta,e,a\n";
  for (const nb::RatioSample& s : rs) {
    std::printf("%.12g,%.12g,%.12g\n", s.theta, s.e, s.a);
    if (s.a > mx) {
      mx = s.a;
      arg = s.theta;
    }
  }
  std::printf("# max a = %.12g at theta = %.12g (all below 1: %s)\n", mx, arg,
              mx < 1 ? "yes" : "NO");
  return mx < 1 ? 0 : 1;
}

int cmd_export(const std::string& file, const std::string& out, const std::string& fmt) {
  nb::GeneratingLoop u = nb::import_loop_json(file);
  if (fmt == "csv") {
    if (u.N == 4) {
      nb::export_csv(u, nullptr, out);
    } else {
      nb::RotationGroup g = nb::build_rotation_group(
          u.N == 12 ? nb::GroupKind::T : u.N == 24 ? nb::GroupKind::O : nb::GroupKind::I);
      nb::export_csv(u, &g, out);
    }
  } else {
    nb::export_loop_json(u, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant N-body action toolkit"};
  app.require_subcommand(1);

  std::string group_name, loop_file, which, cone, params_file, out_csv, out_json;
  std::string export_out, export_fmt = "csv", config_file;
  double alpha = 1.0;
  int m = 0, grid = 200, refine = 0;
  bool check = false;
  std::vector<double> alphas;

  auto* sg = app.add_subcommand("groups", "Rotation group info");
  auto* sgi = sg->add_subcommand("info", "Order, axis census and elements as JSON");
  sgi->add_option("group", group_name, "T, O or I")->required();

  auto* sc = app.add_subcommand("chambers", "Chamber complex");
  auto* scd = sc->add_subcommand("dump", "Emit the complex as JSON");
  scd->add_option("group", group_name, "T, O or I")->required();

  auto* sq = app.add_subcommand("qr", "Archimedean polyhedron");
  auto* sqd = sq->add_subcommand("dump", "Vertices/edges/faces as JSON");
  sqd->add_option("group", group_name, "T, O or I")->required();
  sq->add_subcommand("catalog", "List built-in generating paths");

  auto* sa = app.add_subcommand("action", "Action functional");
  auto* sae = sa->add_subcommand("eval", "Evaluate a loop file");
  sae->add_option("loop", loop_file, "loop JSON")->required()->check(CLI::ExistingFile);
  sae->add_option("--alpha", alpha, "potential exponent");

  auto* st = app.add_subcommand("tables", "Regenerate the published tables");
  st->add_option("--which", which, "1, 2 or 3");
  st->add_flag("--check", check, "exit nonzero on any out-of-tolerance gating cell");

  auto* si = app.add_subcommand("invariant", "Topological invariant of a loop");
  si->add_option("loop", loop_file, "loop JSON")->required()->check(CLI::ExistingFile);

  auto* sm = app.add_subcommand("minimize", "Gradient-flow action minimization");
  sm->add_option("--cone", cone, "catalog id or loop JSON")->required();
  sm->add_option("--alpha", alpha, "potential exponent");
  sm->add_option("--grid", m, "samples per period");
  sm->add_option("--refine", refine, "grid-doubling refinement stages after the first flow");
  sm->add_option("--params", params_file, "flow-parameter JSON")->check(CLI::ExistingFile);
  sm->add_option("--out-csv", out_csv, "trajectory CSV output");
  sm->add_option("--out-json", out_json, "final loop JSON output");

  auto* sw = app.add_subcommand("sweep-alpha", "Warm-started exponent sweep");
  sw->add_option("--cone", cone, "catalog id or loop JSON")->required();
  sw->add_option("--alphas", alphas, "exponent list")->required();
  sw->add_option("--grid", m, "samples per period");
  sw->add_option("--params", params_file, "flow-parameter JSON")->check(CLI::ExistingFile);

  auto* sk = app.add_subcommand("kepler-ratio", "Keplerian-arc action ratio scan");
  sk->add_option("--grid", grid, "theta grid size");

  auto* se = app.add_subcommand("export", "Convert a loop file");
  se->add_option("loop", loop_file, "loop JSON")->required()->check(CLI::ExistingFile);
  se->add_option("out", export_out, "output path")->required();
  se->add_option("--format", export_fmt, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sr = app.add_subcommand("run", "Execute a JSON run configuration");
  sr->add_option("config", config_file, "config JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sgi->parsed()) return cmd_groups(group_name);
    if (scd->parsed()) return cmd_chambers(group_name);
    if (sq->parsed()) {
      if (sqd->parsed()) return cmd_qr_dump(group_name);
      return cmd_qr_catalog();
    }
    if (sae->parsed()) return cmd_action(loop_file, alpha);
    if (st->parsed()) return cmd_tables(which, check);
    if (si->parsed()) return cmd_invariant(loop_file);
    if (sm->parsed())
      return cmd_minimize(cone, alpha, m, refine, params_file, out_csv, out_json);
    if (sw->parsed()) return cmd_sweep_alpha(cone, alphas, m, params_file);
    if (sk->parsed()) return cmd_kepler(grid);
    if (se->parsed()) return cmd_export(loop_file, export_out, export_fmt);
    if (sr->parsed()) return nb::run_config(config_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << app.help();
  return 2;
}
