#include "willmore/moduli.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace willmore {

Lattice::Lattice(Vec2 v1, Vec2 v2) : v1_(v1), v2_(v2) {
  const double det = cross(v1, v2);
  const double size = norm(v1) * norm(v2);
  if (!std::isfinite(det) || !(size > 0.0) || std::abs(det) <= 1e-12 * size) {
    throw std::invalid_argument("degenerate lattice");
  }
  if (det < 0.0) v2_ = -1.0 * v2;
}

ModuliPoint ModuliPoint::make(double x, double y, double scale) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(scale)) {
    throw std::invalid_argument("moduli point must be finite");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("moduli scale must be positive");
  if (!(y > 0.0)) throw std::invalid_argument("moduli point requires y > 0");
  if (x < -kModuliTolerance || x > 0.5 + kModuliTolerance) {
    throw std::invalid_argument("moduli point requires 0 <= x <= 1/2");
  }
  if (x * x + y * y < 1.0 - kModuliTolerance) {
    throw std::invalid_argument("moduli point requires x^2 + y^2 >= 1");
  }
  return ModuliPoint{std::clamp(x, 0.0, 0.5), y, scale};
}

std::string_view to_string(ModuliRegion region) {
  switch (region) {
    case ModuliRegion::LiYau: return "li_yau";
    case ModuliRegion::MontielRos: return "montiel_ros";
    case ModuliRegion::General: return "general";
  }
  return "general";
}

ModuliPoint reduce(const Lattice& lattice) {
  Vec2 a = lattice.v1();
  Vec2 b = lattice.v2();
  // Lagrange-Gauss: keep |a| <= |b| and reduce b modulo a until stable.
  for (int iter = 0; iter < 10000; ++iter) {
    if (dot(b, b) < dot(a, a)) std::swap(a, b);
    const double mu = std::round(dot(a, b) / dot(a, a));
    if (mu == 0.0) break;
    b = b - mu * a;
  }
  if (dot(b, b) < dot(a, a)) std::swap(a, b);

  const double aa = dot(a, a);
  const double scale = std::sqrt(aa);
  // Reflections are conformal equivalences of the unoriented torus, so the
  // signs of x and y are both free.
  double x = std::abs(dot(a, b)) / aa;
  double y = std::abs(cross(a, b)) / aa;
  if (x > 0.5) x = 1.0 - x;  // only reachable through rounding at x = 1/2
  return ModuliPoint::make(x, y, scale);
}

double flat_systole(const ModuliPoint& m) {
  // For a reduced basis the shortest vector is among (1,0), (x,y), (x-1,y).
  const double shortest = std::min({1.0, std::hypot(m.x, m.y), std::hypot(m.x - 1.0, m.y)});
  return m.scale * shortest;
}

double flat_V(const ModuliPoint& m) {
  const double sys = flat_systole(m);
  return m.scale * m.scale * m.y / (sys * sys);
}

ModuliRegion classify_region(const ModuliPoint& m) {
  if (m.y <= 1.0) return ModuliRegion::LiYau;
  const double dx = m.x - 0.5;
  const double dy = m.y - 1.0;
  if (dx * dx + dy * dy <= 0.25) return ModuliRegion::MontielRos;
  return ModuliRegion::General;
}

void to_json(nlohmann::json& j, const ModuliPoint& m) {
  j = nlohmann::json{{"x", m.x}, {"y", m.y}, {"scale", m.scale}};
}

void from_json(const nlohmann::json& j, ModuliPoint& m) {
  m = ModuliPoint::make(j.at("x").get<double>(), j.at("y").get<double>(),
                        j.contains("scale") ? j.at("scale").get<double>() : 1.0);
}

}  // namespace willmore
