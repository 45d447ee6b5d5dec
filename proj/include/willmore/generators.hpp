#pragma once

// Test metrics: truncated cones and cylinders glued into a flat torus,
// random trigonometric conformal factors, and radial fields on the unit disk.

#include <cstdint>
#include <vector>

#include "willmore/geometry.hpp"

namespace willmore::generators {

/// Rotationally symmetric conformal factor u(r) determined by its radial
/// log-derivative f(r) = r u'(r):
///
///     f = 0                 on [0, r_cap)
///     f = b S(...)          rising on [r_cap, r_top]
///     f = b                 on [r_top, R]       (u = a + b log r)
///     f = b (1 - S(...))    on [R, R + w]
///     f = 0                 beyond R + w,
///
/// with S the C^2 smootherstep t^3 (6t^2 - 15t + 10), r_cap = max(0, r_top - w)
/// and u(r) = -int_r^{R+w} f(s)/s ds, so u vanishes outside R + w.
/// For b <= 0 the profile is nonincreasing in r and u(0) = max u.
class RadialProfile {
 public:
  /// log_ratio = log(R / r_top).
  RadialProfile(double b, double R, double log_ratio, double smoothing);

  double b() const { return b_; }
  double R() const { return R_; }
  double r_top() const { return r_top_; }
  double r_cap() const { return r_cap_; }
  double support_radius() const { return r_out_; }

  double f(double r) const;
  double u(double r) const;
  /// int (e^{2u} - 1) dA over the support disk.
  double area_excess() const;

 private:
  double integral_f_over_r(double a, double c) const;

  double b_;
  double R_;
  double r_top_;
  double r_cap_;
  double r_out_;
  double u_R_ = 0.0;
  double u_top_ = 0.0;
  double u_cap_ = 0.0;
};

struct ConeSpec {
  double R = 0.1;
  double H = 0.1;
  /// Opening angle in [0, pi/2]; 0 gives a cylinder.
  double beta = 0.0;
  double smoothing = 0.01;
  TorusGrid grid{ModuliPoint{}, 64, 64};
  int center_i = 0;
  int center_j = 0;

  double rho() const;
  /// log(R / r_top) of the conformal picture: H/R for the cylinder and
  /// log(R/rho) / sin(beta) for a cone.
  double log_ratio() const;
  RadialProfile profile() const;
};

/// Throws std::invalid_argument on bad parameters and "cone does not fit"
/// when 4R is not below the shorter side of the fundamental domain.
ConformalTorusMetric generate_cone(const ConeSpec& spec);

ConformalTorusMetric generate_cylinder(double R, double H, const TorusGrid& grid, int center_i,
                                       int center_j, double smoothing);

/// Samples a radial profile centred on grid node (center_i, center_j).
ConformalTorusMetric sample_radial(const RadialProfile& profile, const TorusGrid& grid,
                                   int center_i, int center_j);

struct FamilyMember {
  ConformalTorusMetric metric;
  double R = 0.0;
  double log_ratio = 0.0;
  /// u(0) of the continuous profile.
  double osc = 0.0;
  double area_excess = 0.0;
};

struct FamilyOptions {
  int n = 512;
  double R0 = 0.22;
  double log_ratio0 = 0.15;
  /// Transition width in grid cells.
  double smoothing_cells = 6.0;
  double growth = 2.1;
};

/// Metrics on the fixed unit square torus whose oscillation grows by
/// `growth` per step while the area stays fixed: each step raises the
/// log-ratio and shrinks R so the area excess matches the first member.
std::vector<FamilyMember> unbounded_oscillation_family(double beta, int steps,
                                                       const FamilyOptions& options = {});

/// u = sum of `modes` random low-frequency lattice modes, rescaled so that
/// the sampled oscillation equals `amplitude`. Deterministic in seed.
ConformalTorusMetric random_trig_metric(const TorusGrid& grid, int modes, double amplitude,
                                        std::uint64_t seed);

/// Uniform double in [0, 1) from one 64-bit draw.
double uniform01(std::uint64_t bits);

// ---------------------------------------------------------------------------
// Radial fields on the unit disk, u = +-m (1 - r^2)^k, vanishing on the
// boundary. Integrals use Gauss-Legendre nodes in r with weight r dr; the
// integrands are radial, so the angular factor is exactly 2 pi.

enum class DiskProfile { Cap, Well };

struct DiskField {
  DiskProfile profile = DiskProfile::Cap;
  double magnitude = 0.0;
  int k = 3;
  std::vector<double> r;       // radial nodes
  std::vector<double> weight;  // r dr quadrature weights
  std::vector<double> u;
  std::vector<double> laplacian;  // Delta u with the nonnegative convention

  double max_u() const;
  double min_u() const;
};

struct DiskFunctionals {
  double area = 0.0;
  double Kp = 0.0;
  double Kp_plus = 0.0;
  double Kp_minus = 0.0;
};

/// Requires k >= 2 and n >= 4 radial nodes.
DiskField disk_test_field(DiskProfile profile, double magnitude, int n, int k = 3);

/// Scale-invariant functionals of e^{2u} g_eucl on the disk.
DiskFunctionals disk_functionals(const DiskField& field, double p);

}  // namespace willmore::generators
