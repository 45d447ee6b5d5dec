#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "willmore/immersions.hpp"

using namespace willmore;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiSq = 2.0 * kPi * kPi;

}  // namespace

TEST_CASE("revolution tori against the closed form") {
  CHECK(willmore_energy_revolution_closed_form(std::sqrt(2.0), 1.0) == doctest::Approx(kTwoPiSq));
  CHECK(willmore_energy_revolution_closed_form(3.0, 1.0) == doctest::Approx(31.404888898374958));
  for (const double c : {std::sqrt(2.0), 1.2, 2.0, 3.0, 10.0}) {
    const double w = willmore_energy_revolution(2.0 * c, 2.0);
    CHECK(std::abs(w / willmore_energy_revolution_closed_form(c, 1.0) - 1.0) < 1e-12);
  }
  CHECK_THROWS_WITH_AS(willmore_energy_revolution(1.0, 1.0), "self-intersecting profile",
                       std::invalid_argument);
  CHECK_THROWS_AS(willmore_energy_revolution(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("conformal built-ins") {
  for (const NamedImmersion& b : builtin_immersions(64)) {
    const auto* t = std::get_if<ConformalGridImmersion>(&b.torus);
    if (t == nullptr) continue;
    CAPTURE(b.name);
    CHECK(conformality(*t).conformal);
    const double w = willmore_energy_conformal(*t);
    CHECK(w == doctest::Approx(b.exact_W).epsilon(1e-8));
    CHECK(willmore_energy_second_fundamental_form(*t) == doctest::Approx(w).epsilon(1e-8));
  }
}

TEST_CASE("areas of known surfaces") {
  const ParsevalAreas c = parseval_area_identities(clifford_torus(32));
  CHECK(c.area_quad == doctest::Approx(kTwoPiSq));
  CHECK(c.area_e1 == doctest::Approx(kTwoPiSq));
  const ParsevalAreas r = parseval_area_identities(conformal_revolution_torus(2.0, 1.0, 96));
  CHECK(r.area_quad == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-10));
  CHECK(r.area_e2 == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-10));
  const ParsevalAreas f = parseval_area_identities(flat_product_torus(32));
  CHECK(f.area_quad == doctest::Approx(2.0));
}

TEST_CASE("inverted Clifford torus has nonconstant conformal factor") {
  const ConformalGridImmersion t = inverted_clifford_torus(64);
  const ScalarField u = induced_conformal_factor(t);
  const auto [lo, hi] = std::minmax_element(u.samples().begin(), u.samples().end());
  CHECK(*hi - *lo > 0.5);
  CHECK(willmore_energy_conformal(t) == doctest::Approx(kTwoPiSq).epsilon(1e-8));
}

TEST_CASE("non-conformal parametrizations are rejected") {
  const ConformalGridImmersion t = angle_parametrized_revolution_torus(2.0, 1.0, 64);
  const ConformalityDefect d = conformality(t);
  CHECK_FALSE(d.conformal);
  CHECK(d.max_relative > 0.1);
  CHECK_THROWS_WITH_AS(induced_conformal_factor(t), "parametrization not conformal",
                       std::invalid_argument);
  CHECK_THROWS_AS(willmore_energy_conformal(t), std::invalid_argument);
  // The second fundamental form route does not need conformality.
  CHECK(willmore_energy_second_fundamental_form(t) ==
        doctest::Approx(willmore_energy_revolution_closed_form(2.0, 1.0)).epsilon(1e-8));
}

TEST_CASE("lower bounds hold on the built-ins") {
  for (const NamedImmersion& b : builtin_immersions(64)) {
    CAPTURE(b.name);
    const LowerBoundVerification v = verify_lower_bounds(b.torus, 2.0, 64);
    CHECK(v.all_hold);
    CHECK(v.W == doctest::Approx(b.exact_W).epsilon(1e-8));
    for (const LowerBound& lb : v.lower_bounds) CHECK(v.W >= (1.0 - kBoundSlack) * lb.value);
  }
}

TEST_CASE("certificates of the built-ins") {
  const LowerBoundVerification clifford = verify_lower_bounds(clifford_torus(64), 2.0, 64);
  CHECK(clifford.certificate.rule == CertificateRule::LiYauRegion);
  // Flat product on the lattice with y = 2: K = 0 is below every threshold.
  const LowerBoundVerification flat = verify_lower_bounds(flat_product_torus(64), 2.0, 64);
  CHECK(flat.certificate.status == CertificateStatus::Certified);
  CHECK(flat.report.y == doctest::Approx(2.0));
  // c = 2 sits at y = sqrt3 > 1 with large curvature: nothing certifies, and
  // the best lower bound stays below the actual energy.
  const LowerBoundVerification rev = verify_lower_bounds(RevolutionTorus{2.0, 1.0}, 2.0, 64);
  CHECK(rev.certificate.status == CertificateStatus::Uncertified);
  CHECK(rev.W > rev.certificate.lower_bound);
}

TEST_CASE("mildly inverted Clifford torus lies strictly above its Q bound") {
  // Inversion about a distant point: a small conformal perturbation with W = 2 pi^2.
  ConformalGridImmersion t = clifford_torus(64);
  const double centre = 20.0;
  for (std::size_t k = 0; k < t.grid.size(); ++k) {
    double r2 = 0.0;
    for (int c = 0; c < 4; ++c) {
      const double d = t.F[c].samples()[k] - (c == 0 ? centre : 0.0);
      r2 += d * d;
    }
    for (int c = 0; c < 4; ++c) {
      auto s = t.F[c].samples();
      const double o = c == 0 ? centre : 0.0;
      s[k] = o + (s[k] - o) / r2;
    }
  }
  const LowerBoundVerification v = verify_lower_bounds(t, 2.0, 64);
  CHECK(v.W == doctest::Approx(kTwoPiSq).epsilon(1e-8));
  bool found = false;
  for (const LowerBound& lb : v.lower_bounds) {
    if (lb.rule != "q_bound_y") continue;
    found = true;
    CHECK(v.W > lb.value * (1.0 + 1e-6));
  }
  CHECK(found);
}
