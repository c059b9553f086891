#include "nb/catalog.hpp"

#include <stdexcept>

#include "json.hpp"

#include "catalog_data.inc"

namespace nb {

namespace {
std::vector<CatalogGroup> parse_catalog() {
  using nlohmann::json;
  json root = json::parse(kCatalogJson);
  std::vector<CatalogGroup> out;
  // Context keys name the base solid; map to the rotation group.
  const std::pair<const char*, GroupKind> ctxs[] = {
      {"T", GroupKind::T}, {"C", GroupKind::O}, {"D", GroupKind::I}};
  for (auto& [key, kind] : ctxs) {
    const json& j = root.at(key);
    CatalogGroup g;
    g.kind = kind;
    g.ups1 = j.at("ups1").get<double>();
    g.ups2 = j.at("ups2").get<double>();
    g.ell = j.at("ell").get<double>();
    auto q = j.at("q").get<std::vector<double>>();
    g.q = {q[0], q[1], q[2]};
    for (auto& v : j.at("verts"))
      g.verts.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    for (auto& e : j.at("entries")) {
      CatalogEntry ent;
      ent.id = e.at("id").get<std::string>();
      ent.group = kind;
      ent.is_min = e.at("kind").get<std::string>() == "min";
      if (ent.is_min) {
        ent.cone = e.at("cone").get<int>();
        ent.dual = e.at("dual").get<bool>();
        ent.Hframe = e.at("H").get<int>();
      } else {
        ent.M = e.at("M").get<int>();
      }
      ent.tau0 = e.at("tau0").get<double>();
      ent.path = e.at("path").get<std::vector<int>>();
      ent.N1 = e.at("N1").get<int>();
      ent.N2 = e.at("N2").get<int>();
      ent.Ksig = e.at("Ksig").get<int>();
      g.entries.push_back(std::move(ent));
    }
    out.push_back(std::move(g));
  }
  return out;
}
}  // namespace

const std::vector<CatalogGroup>& catalog() {
  static const std::vector<CatalogGroup> c = parse_catalog();
  return c;
}

const CatalogGroup& catalog_group(GroupKind k) {
  for (const CatalogGroup& g : catalog())
    if (g.kind == k) return g;
  throw std::invalid_argument("catalog_group: unknown group");
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const CatalogGroup& g : catalog())
    for (const CatalogEntry& e : g.entries)
      if (e.id == id) return e;
  throw std::invalid_argument("catalog_entry: unknown id " + id);
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const CatalogGroup& g : catalog())
    for (const CatalogEntry& e : g.entries) ids.push_back(e.id);
  return ids;
}

}  // namespace nb
