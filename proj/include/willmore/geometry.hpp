#pragma once

// Intrinsic geometry of a conformal metric g = e^{2u} g0 on a flat torus.

#include <span>
#include <vector>

#include <json.hpp>

#include "willmore/fields.hpp"
#include "willmore/moduli.hpp"

namespace willmore {

class ConformalTorusMetric {
 public:
  explicit ConformalTorusMetric(ScalarField u) : u_(std::move(u)) {}

  const ScalarField& u() const { return u_; }
  const TorusGrid& grid() const { return u_.grid(); }
  const ModuliPoint& moduli() const { return u_.grid().moduli(); }

  /// The metric e^{2(u + c)} g0.
  ConformalTorusMetric shifted(double c) const;

 private:
  ScalarField u_;
};

/// K_g = e^{-2u} Delta u.
ScalarField gaussian_curvature(const ConformalTorusMetric& metric);

struct CurvatureFunctionals {
  double K1 = 0.0;
  double Kp = 0.0;
  double Kp_plus = 0.0;
  double Kp_minus = 0.0;
};

/// Scale-invariant L^p curvature functionals ||K||_{L^p(g)} area_g^{1 - 1/p}.
/// Throws std::invalid_argument("p must exceed 1") for p <= 1.
CurvatureFunctionals curvature_functionals(const ConformalTorusMetric& metric, double p);

double area(const ConformalTorusMetric& metric);
double oscillation(const ConformalTorusMetric& metric);

/// int K_g darea_g, zero in the continuum.
double gauss_bonnet_residual(const ConformalTorusMetric& metric);

// ---------------------------------------------------------------------------
// Systole.
//
// Graph surrogate: nodes are (possibly decimated) grid samples, edges join
// nodes differing by a primitive index step (a, b) with |a|, |b| <= radius,
// weighted by flat length times the mean of e^u at the two ends. The loop
// length is the shortest path from a basepoint to one of its nonzero lattice
// translates in a (2 k_max + 1)^2 window of the universal cover.
//
// Every noncontractible loop with class (k, l), l != 0, crosses index row
// j = 0, and every loop with l = 0 crosses column i = 0, so basepoints are
// taken along those two lines: every `basepoint_stride`-th node first, then
// all nodes within one stride of the best coarse basepoint.
//
// For flat metrics a graph path is at most `anisotropy` times longer than
// the straight segment it approximates, where anisotropy = 1 / cos(gap / 2)
// and gap is the widest angle between consecutive stencil directions. Since
// V = area / sys^2, the graph V may fall short of the continuous one by the
// factor anisotropy^2.

struct SystoleOptions {
  int k_max = 3;
  int basepoint_stride = 4;
  /// Decimate so that each axis keeps at most this many nodes.
  int max_nodes = 128;
  /// 0 picks the smallest radius in {1, 2, 3} whose tolerance is at most
  /// kTargetTolerance.
  int stencil_radius = 0;
  bool parallel = true;
};

inline constexpr double kTargetTolerance = 0.083;

struct SystoleResult {
  double length = 0.0;
  /// Lattice class k v1 + l v2 of the loop found.
  int k = 0;
  int l = 0;
  int stencil_radius = 1;
  /// anisotropy^2 - 1: the continuous V exceeds the graph V by at most this
  /// relative amount. The length itself is off by at most anisotropy - 1.
  double tolerance = 0.0;
  int nodes1 = 0;
  int nodes2 = 0;
};

/// Anisotropy factor of the stencil of the given radius on steps d1, d2.
double stencil_anisotropy(Vec2 d1, Vec2 d2, int radius);

SystoleResult conformal_systole(const ConformalTorusMetric& metric,
                                const SystoleOptions& options = {});

// ---------------------------------------------------------------------------
// Noncontractible loops in sublevel and superlevel sets.

/// True when the 4-connected node set marked in `mask` (row-major n1 x n2,
/// periodic) contains a loop that is not null-homotopic on the torus.
bool has_noncontractible_loop(int n1, int n2, std::span<const unsigned char> mask);

struct LevelBand {
  /// inf { v : {u <= v} carries a noncontractible loop }.
  double v1 = 0.0;
  /// sup { v : {u >= v} carries a noncontractible loop }.
  double v2 = 0.0;
};

LevelBand level_band(const ConformalTorusMetric& metric);

// ---------------------------------------------------------------------------

struct GeometryReport {
  double x = 0.0;
  double y = 1.0;
  double area_g = 0.0;
  double area_g0 = 0.0;
  double sys_g = 0.0;
  double sys_g0 = 0.0;
  double V_g = 0.0;
  double V_g0 = 0.0;
  double osc_u = 0.0;
  double K1 = 0.0;
  double Kp = 0.0;
  double Kp_plus = 0.0;
  double Kp_minus = 0.0;
  double p = 2.0;
  double gauss_bonnet_residual = 0.0;
  double tol_sys = 0.0;
};

/// sys_g0 and V_g0 are exact flat values; sys_g comes from the graph
/// surrogate and carries tolerance tol_sys.
GeometryReport report(const ConformalTorusMetric& metric, double p,
                      const SystoleOptions& options = {});

void to_json(nlohmann::json& j, const GeometryReport& r);

}  // namespace willmore
