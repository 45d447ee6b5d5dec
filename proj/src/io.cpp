#include "willmore/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace willmore::io {

namespace {

std::vector<double> finite_array(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw std::runtime_error(std::string(what) + " contains a non-numeric entry");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw std::runtime_error(std::string(what) + " contains a non-finite entry");
    out.push_back(d);
  }
  return out;
}

double finite_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::runtime_error(std::string("missing numeric field '") + key + "'");
  }
  const double d = j.at(key).get<double>();
  if (!std::isfinite(d)) throw std::runtime_error(std::string("field '") + key + "' is not finite");
  return d;
}

TorusGrid grid_from_json(const nlohmann::json& j) {
  if (!j.contains("lattice") || !j.at("lattice").is_object()) {
    throw std::runtime_error("missing 'lattice' object");
  }
  const auto& lat = j.at("lattice");
  const double x = finite_number(lat, "x");
  const double y = finite_number(lat, "y");
  const double scale = lat.contains("scale") ? finite_number(lat, "scale") : 1.0;
  if (!j.contains("grid") || !j.at("grid").is_array() || j.at("grid").size() != 2 ||
      !j.at("grid")[0].is_number_integer() || !j.at("grid")[1].is_number_integer()) {
    throw std::runtime_error("'grid' must be [n1, n2]");
  }
  try {
    return TorusGrid(ModuliPoint::make(x, y, scale), j.at("grid")[0].get<int>(),
                     j.at("grid")[1].get<int>());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

nlohmann::json grid_to_json(const TorusGrid& g) {
  return {{"lattice", g.moduli()}, {"grid", {g.n1(), g.n2()}}};
}

}  // namespace

nlohmann::json field_to_json(const ScalarField& u) {
  nlohmann::json j = grid_to_json(u.grid());
  j["u"] = std::vector<double>(u.samples().begin(), u.samples().end());
  return j;
}

ScalarField field_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("field file must hold a JSON object");
  const TorusGrid grid = grid_from_json(j);
  if (!j.contains("u")) throw std::runtime_error("missing 'u' array");
  std::vector<double> u = finite_array(j.at("u"), "'u'");
  if (u.size() != grid.size()) {
    throw std::runtime_error("'u' has " + std::to_string(u.size()) + " entries, expected " +
                             std::to_string(grid.size()));
  }
  return ScalarField(grid, std::move(u));
}

nlohmann::json immersion_to_json(const ImmersedTorus& t) {
  if (const auto* rev = std::get_if<RevolutionTorus>(&t)) {
    return {{"kind", "revolution"}, {"R", rev->R}, {"r", rev->r}};
  }
  const auto& grid_t = std::get<ConformalGridImmersion>(t);
  nlohmann::json j = grid_to_json(grid_t.grid);
  j["kind"] = "conformal_grid";
  nlohmann::json F = nlohmann::json::array();
  for (const ScalarField& f : grid_t.F) F.push_back(std::vector<double>(f.samples().begin(), f.samples().end()));
  j["F"] = std::move(F);
  return j;
}

ImmersedTorus immersion_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw std::runtime_error("immersion file needs a 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "revolution") {
    const double R = finite_number(j, "R");
    const double r = finite_number(j, "r");
    if (!(r > 0.0) || !(R > r)) throw std::runtime_error("self-intersecting profile");
    return RevolutionTorus{R, r};
  }
  if (kind != "conformal_grid") throw std::runtime_error("unknown immersion kind '" + kind + "'");
  const TorusGrid grid = grid_from_json(j);
  if (!j.contains("F") || !j.at("F").is_array()) throw std::runtime_error("missing 'F' array");
  ConformalGridImmersion t{grid, {}};
  for (const auto& col : j.at("F")) {
    std::vector<double> v = finite_array(col, "'F'");
    if (v.size() != grid.size()) throw std::runtime_error("'F' coordinate has the wrong length");
    t.F.emplace_back(grid, std::move(v));
  }
  if (t.F.size() < 3) throw std::runtime_error("'F' needs at least 3 coordinates");
  return t;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump() << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_field_file(const std::filesystem::path& path, const ScalarField& u) {
  write_json(path, field_to_json(u));
}

ScalarField read_field_file(const std::filesystem::path& path) {
  return field_from_json(read_json(path));
}

void write_immersion_file(const std::filesystem::path& path, const ImmersedTorus& t) {
  write_json(path, immersion_to_json(t));
}

ImmersedTorus read_immersion_file(const std::filesystem::path& path) {
  return immersion_from_json(read_json(path));
}

}  // namespace willmore::io
