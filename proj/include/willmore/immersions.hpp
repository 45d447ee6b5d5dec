#pragma once

// Willmore energy of explicit immersed tori and checks of the lower bounds
// against it.

#include <string>
#include <variant>
#include <vector>

#include "willmore/bounds.hpp"
#include "willmore/fields.hpp"

namespace willmore {

/// Coordinates F_1..F_n of a torus immersion sampled on a lattice grid.
/// The parametrization is expected to be conformal.
struct ConformalGridImmersion {
  TorusGrid grid;
  std::vector<ScalarField> F;
};

/// Torus of revolution with ring radius R and tube radius r.
struct RevolutionTorus {
  double R = 2.0;
  double r = 1.0;
};

using ImmersedTorus = std::variant<ConformalGridImmersion, RevolutionTorus>;

/// Relative conformality tolerance.
inline constexpr double kConformalityTolerance = 1e-6;

struct ConformalityDefect {
  /// max over samples of max(| |F_1|^2 - |F_2|^2 |, 2 |<F_1, F_2>|) / e^{2u}.
  double max_relative = 0.0;
  bool conformal = false;
};

ConformalityDefect conformality(const ConformalGridImmersion& t);

/// u with e^{2u} = (|d_1 F|^2 + |d_2 F|^2) / 2. Throws
/// std::invalid_argument("parametrization not conformal") when the
/// conformality defect exceeds the tolerance.
ScalarField induced_conformal_factor(const ConformalGridImmersion& t);

/// W = 1/4 sum_i int e^{-2u} (Delta F_i)^2 darea_{g0}.
double willmore_energy_conformal(const ConformalGridImmersion& t);

/// Independent evaluation: H = 1/2 g^{ab} (d_a d_b F)^normal with the full
/// induced metric, integrated as |H|^2 sqrt(det g).
double willmore_energy_second_fundamental_form(const ConformalGridImmersion& t);

/// 1D periodic quadrature of H^2 over the profile circle. Throws
/// std::invalid_argument("self-intersecting profile") unless R > r > 0.
double willmore_energy_revolution(double R, double r);

/// pi^2 c^2 / sqrt(c^2 - 1), c = R / r.
double willmore_energy_revolution_closed_form(double R, double r);

struct ParsevalAreas {
  double area_e1 = 0.0;  // from Fourier coefficients weighted by xi_1^2
  double area_e2 = 0.0;  // from Fourier coefficients weighted by xi_2^2
  double area_quad = 0.0;  // quadrature of sqrt(det g)
};

ParsevalAreas parseval_area_identities(const ConformalGridImmersion& t);

// Built-in immersions. n is the sample count along the first generator.

/// (1/sqrt2)(cos sqrt2 s, sin sqrt2 s, cos sqrt2 t, sin sqrt2 t) on the
/// square lattice of side sqrt2 pi. W = 2 pi^2.
ConformalGridImmersion clifford_torus(int n);

/// Product of circles of radii 1/(2pi) and 1/pi over the lattice spanned by
/// (1, 0) and (0, 2). Flat, W = 5 pi^2 / 2.
ConformalGridImmersion flat_product_torus(int n);

/// Torus of revolution in conformal coordinates (sigma, phi) with
/// e^u = R + r cos(theta(sigma)).
ConformalGridImmersion conformal_revolution_torus(double R, double r, int n);

/// Clifford torus followed by an inversion of R^4 in the unit sphere about a
/// point off the surface. Conformal, nonconstant u, W = 2 pi^2.
ConformalGridImmersion inverted_clifford_torus(int n);

/// The torus of revolution in its (theta, phi) angle coordinates, which are
/// not conformal. Used to exercise the conformality check.
ConformalGridImmersion angle_parametrized_revolution_torus(double R, double r, int n);

struct NamedImmersion {
  std::string name;
  ImmersedTorus torus;
  /// Analytic Willmore energy.
  double exact_W = 0.0;
};

/// The built-in immersions at resolution n.
std::vector<NamedImmersion> builtin_immersions(int n);

struct LowerBoundVerification {
  double W = 0.0;
  GeometryReport report;
  Certificate certificate;
  std::vector<LowerBound> lower_bounds;
  /// W >= (1 - kBoundSlack) * every lower bound.
  bool all_hold = false;
};

/// Relative slack when comparing W against lower bounds that are attained
/// (Clifford torus against 2 pi^2 / y, the flat product against the
/// oscillation bound).
inline constexpr double kBoundSlack = 1e-8;

/// For a revolution torus the conformal metric is taken from
/// conformal_revolution_torus at resolution n and W from the 1D quadrature.
LowerBoundVerification verify_lower_bounds(const ImmersedTorus& t, double p, int n = 128,
                                           const SystoleOptions& options = {});

}  // namespace willmore
