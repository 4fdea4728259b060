#include "igabem/geometry_io.hpp"

#include <fstream>
#include <json.hpp>

namespace igabem {

using nlohmann::json;

std::string surface_to_json(const MultiPatchSurface& surface) {
  json root;
  root["patches"] = json::array();
  for (int p = 0; p < surface.num_patches(); ++p) {
    const NurbsPatch& patch = surface.patch(p);
    json jp;
    jp["degrees"] = {patch.degree1(), patch.degree2()};
    jp["knots_u"] = patch.knots_u().entries();
    jp["knots_v"] = patch.knots_v().entries();
    json cp = json::array();
    for (const Vec3& q : patch.control_points()) cp.push_back({q.x(), q.y(), q.z()});
    jp["control_points"] = std::move(cp);
    jp["weights"] = patch.weights();
    root["patches"].push_back(std::move(jp));
  }
  root["interfaces"] = json::array();
  for (const auto& rec : surface.interfaces()) {
    root["interfaces"].push_back({{"patch_a", rec.patch_a},
                                  {"edge_a", rec.edge_a},
                                  {"patch_b", rec.patch_b},
                                  {"edge_b", rec.edge_b},
                                  {"reversed", rec.reversed}});
  }
  return root.dump(2);
}

void write_surface_json(const MultiPatchSurface& surface, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open geometry file for writing: " + path);
  out << surface_to_json(surface) << "\n";
}

MultiPatchSurface surface_from_json(const std::string& json_text) {
  json root = json::parse(json_text);
  std::vector<NurbsPatch> patches;
  for (const auto& jp : root.at("patches")) {
    const int d1 = jp.at("degrees").at(0).get<int>();
    const int d2 = jp.at("degrees").at(1).get<int>();
    KnotVector ku(jp.at("knots_u").get<std::vector<double>>(), d1);
    KnotVector kv(jp.at("knots_v").get<std::vector<double>>(), d2);
    std::vector<Vec3> pts;
    for (const auto& q : jp.at("control_points"))
      pts.emplace_back(q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>());
    patches.emplace_back(std::move(ku), std::move(kv), std::move(pts),
                         jp.at("weights").get<std::vector<double>>());
  }
  std::optional<std::vector<InterfaceRecord>> interfaces;
  if (root.contains("interfaces") && !root["interfaces"].empty()) {
    std::vector<InterfaceRecord> recs;
    for (const auto& ji : root["interfaces"]) {
      recs.push_back({ji.at("patch_a").get<int>(), ji.at("edge_a").get<int>(),
                      ji.at("patch_b").get<int>(), ji.at("edge_b").get<int>(),
                      ji.at("reversed").get<bool>()});
    }
    interfaces = std::move(recs);
  }
  return MultiPatchSurface(std::move(patches), std::move(interfaces));
}

MultiPatchSurface read_surface_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open geometry file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return surface_from_json(text);
}

}  // namespace igabem
