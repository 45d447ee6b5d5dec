#pragma once

// Lattices in the plane and their conformal classes.
//
// Every flat torus R^2/L is conformally equivalent to exactly one torus
// R^2/<(1,0),(x,y)> with (x,y) in the reduced domain
//
//     0 <= x <= 1/2,   x^2 + y^2 >= 1,   y > 0.
//
// A ModuliPoint carries that pair together with the length of the shortest
// lattice vector, so that the original lattice is a rigid motion of
// scale * <(1,0),(x,y)>.

#include <array>
#include <cmath>
#include <string_view>

#include <json.hpp>

namespace willmore {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Reduction tolerance: x^2 + y^2 in [1 - kModuliTolerance, 1] counts as
/// lying on the unit circle.
inline constexpr double kModuliTolerance = 1e-9;

/// A rank-2 lattice in R^2. Construction normalizes the orientation so that
/// det(v1, v2) > 0 and rejects degenerate generators.
class Lattice {
 public:
  Lattice(Vec2 v1, Vec2 v2);

  Vec2 v1() const { return v1_; }
  Vec2 v2() const { return v2_; }
  double covolume() const { return cross(v1_, v2_); }

 private:
  Vec2 v1_;
  Vec2 v2_;
};

struct ModuliPoint {
  double x = 0.0;
  double y = 1.0;
  double scale = 1.0;

  /// Validates the reduced-domain invariants; throws std::invalid_argument.
  static ModuliPoint make(double x, double y, double scale = 1.0);

  /// Generators scale*(1,0) and scale*(x,y).
  Vec2 v1() const { return {scale, 0.0}; }
  Vec2 v2() const { return {scale * x, scale * y}; }
  Lattice lattice() const { return Lattice(v1(), v2()); }

  friend bool operator==(const ModuliPoint&, const ModuliPoint&) = default;
};

enum class ModuliRegion { LiYau, MontielRos, General };

std::string_view to_string(ModuliRegion region);

/// Gauss reduction of an arbitrary lattice to its point in the reduced domain.
/// Throws std::invalid_argument("degenerate lattice") for |det| ~ 0.
ModuliPoint reduce(const Lattice& lattice);

/// Length of the shortest non-zero lattice vector of the flat torus.
double flat_systole(const ModuliPoint& m);

/// area / sys^2 of the flat torus, which equals y.
double flat_V(const ModuliPoint& m);

/// Li-Yau region (y <= 1) takes precedence over the Montiel-Ros disk
/// (x - 1/2)^2 + (y - 1)^2 <= 1/4.
ModuliRegion classify_region(const ModuliPoint& m);

void to_json(nlohmann::json& j, const ModuliPoint& m);
void from_json(const nlohmann::json& j, ModuliPoint& m);

}  // namespace willmore
