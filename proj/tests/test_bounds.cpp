#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "willmore/bounds.hpp"

using namespace willmore;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiSq = 2.0 * kPi * kPi;

// Frozen values from an independent 30-digit evaluation of the closed forms.
constexpr double kS_2pi_2_1 = 3.5182661147973116;
constexpr double kQ_2pi_2_1 = 1137.4363913788791;
constexpr double kS_1_3_2 = 0.48206491995280153;
constexpr double kTau_2 = 0.19875532982449428;
constexpr double kTau_1_5 = 0.080428770218831319;
constexpr double kTau_3 = 0.37112195559527591;
constexpr double kTau_2_p3 = 0.23422503443360442;
constexpr double kSigma1_4 = 0.42585973541321296;
constexpr double kSigma1_10 = 0.36825181274308080;
constexpr double kDiskMax_1_2 = 0.21787266217514535;

GeometryReport synthetic(double x, double y, double Kp, double V_g, double tol, double osc) {
  GeometryReport r;
  r.x = x;
  r.y = y;
  r.Kp = Kp;
  r.p = 2.0;
  r.V_g0 = y;
  r.V_g = V_g;
  r.tol_sys = tol;
  r.osc_u = osc;
  r.sys_g0 = 1.0;
  r.sys_g = 1.0;
  return r;
}

}  // namespace

TEST_CASE("conjugate exponent") {
  CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(conjugate_exponent(1.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundParams::make(-1.0, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundParams::make(1.0, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("S and Q closed forms") {
  CHECK(S_bound(2.0 * kPi, 2.0, 1.0) == doctest::Approx(kS_2pi_2_1).epsilon(1e-13));
  CHECK(Q_bound(2.0 * kPi, 2.0, 1.0) == doctest::Approx(kQ_2pi_2_1).epsilon(1e-12));
  CHECK(S_bound(1.0, 3.0, 2.0) == doctest::Approx(kS_1_3_2).epsilon(1e-13));
  CHECK(S_bound(0.0, 2.0, 5.0) == 0.0);
  CHECK_THROWS_WITH_AS(S_bound(4.0 * kPi, 2.0, 1.0), "S undefined at or above 4π", std::domain_error);
  CHECK_THROWS_AS(S_bound(13.0, 2.0, 1.0), std::domain_error);
  // Increasing in K and V.
  CHECK(S_bound(1.0, 2.0, 1.0) < S_bound(1.1, 2.0, 1.0));
  CHECK(S_bound(1.0, 2.0, 1.0) < S_bound(1.0, 2.0, 1.1));
}

TEST_CASE("tau") {
  CHECK(tau(2.0, 2.0) == doctest::Approx(kTau_2).epsilon(1e-12));
  CHECK(std::abs(tau(2.0, 2.0) - 0.1987553) < 1e-4);
  CHECK(tau(1.5, 2.0) == doctest::Approx(kTau_1_5).epsilon(1e-12));
  CHECK(tau(3.0, 2.0) == doctest::Approx(kTau_3).epsilon(1e-12));
  CHECK(tau(2.0, 3.0) == doctest::Approx(kTau_2_p3).epsilon(1e-12));
  // Defining equation.
  const double t = tau(2.0, 2.0);
  CHECK(Q_bound(t, 2.0, 2.0) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK_THROWS_AS(tau(1.0, 2.0), UnconstrainedThreshold);
  CHECK_THROWS_WITH(tau(0.9, 2.0), "use region rules: τ is unconstrained for y ≤ 1");
  CHECK_THROWS_AS(tau(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("tau decreases to zero as y decreases to one") {
  double previous = 0.0;
  for (const double y : {1.001, 1.01, 1.1, 1.5, 2.0, 3.0, 5.0}) {
    const double t = tau(y, 2.0);
    CHECK(t > previous);
    previous = t;
  }
  CHECK(tau(1.001, 2.0) < 1e-6);
}

TEST_CASE("sigma") {
  CHECK(sigma1(4.0, 2.0) == doctest::Approx(kSigma1_4).epsilon(1e-12));
  CHECK(sigma1(10.0, 2.0) == doctest::Approx(kSigma1_10).epsilon(1e-12));
  // With tau increasing, the inner minimum sits at sqrt V.
  CHECK(sigma(4.0, 2.0) == doctest::Approx(kTau_2).epsilon(1e-9));
  CHECK(sigma(4.0, 2.0) <= 0.1987553 + 1e-7);
  CHECK(sigma(10.0, 2.0) <= sigma1(10.0, 2.0));
  CHECK_THROWS_AS(sigma(1.0, 2.0), UnconstrainedThreshold);
  CHECK_THROWS_WITH(sigma1(0.5, 2.0), "use systole rule for 𝒱 ≤ 1");
}

TEST_CASE("disk bounds") {
  CHECK(disk_max_bound(1.0, 2.0) == doctest::Approx(kDiskMax_1_2).epsilon(1e-13));
  CHECK(disk_min_bound(1.0, 2.0) == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-13));
  CHECK(disk_min_bound(1.0, 3.0) == doctest::Approx(-1.5 / (4.0 * kPi)).epsilon(1e-13));
  CHECK_THROWS_WITH_AS(disk_max_bound(2.0 * kPi, 2.0), "disk bound requires 𝒦⁺_p < 2π",
                       std::domain_error);
}

TEST_CASE("V_upper and the oscillation check") {
  const GeometryReport r = synthetic(0.1, 1.5, 1.0, 1.6, 0.05, 0.2);
  CHECK(V_upper(r) == doctest::Approx(1.6 * 1.05));
  const OscBoundCheck c = osc_bound_check(r);
  CHECK(c.bound_a == doctest::Approx(S_bound(1.0, 2.0, 1.5)));
  CHECK(c.bound_b == doctest::Approx(S_bound(1.0, 2.0, 1.6 * 1.05)));
  CHECK(c.holds);
  const GeometryReport big = synthetic(0.1, 1.5, 1.0, 1.6, 0.05, 5.0);
  CHECK_FALSE(osc_bound_check(big).holds);
  CHECK_THROWS_WITH_AS(osc_bound_check(synthetic(0.1, 1.5, 13.0, 1.6, 0.05, 0.2)),
                       "theorem hypothesis violated", std::domain_error);
}

TEST_CASE("certificate rule order") {
  // Li-Yau region.
  Certificate c = certify(synthetic(0.5, 0.9, 50.0, 0.9, 0.05, 3.0));
  CHECK(c.status == CertificateStatus::Certified);
  CHECK(c.rule == CertificateRule::LiYauRegion);
  CHECK(c.lower_bound >= kTwoPiSq);

  // Montiel-Ros disk.
  c = certify(synthetic(0.3, 1.1, 50.0, 1.1, 0.05, 3.0));
  CHECK(c.rule == CertificateRule::MontielRosRegion);

  // Systolic ratio at most one.
  c = certify(synthetic(0.0, 2.0, 50.0, 0.8, 0.05, 3.0));
  CHECK(c.rule == CertificateRule::SystoleBound);
  // The measurement interval must lie below one.
  c = certify(synthetic(0.0, 2.0, 50.0, 0.99, 0.05, 3.0));
  CHECK(c.rule != CertificateRule::SystoleBound);

  // Main threshold on y.
  c = certify(synthetic(0.0, 2.0, 0.1, 2.0, 0.05, 0.05));
  CHECK(c.rule == CertificateRule::MainTheoremI);
  CHECK(c.witnesses.at("tau") == doctest::Approx(kTau_2).epsilon(1e-12));

  // Above tau(y) but below sigma(V) across the measured interval [4, 4.0804],
  // where sigma(4) = tau(2) is the smallest value.
  c = certify(synthetic(0.0, 1.5, 0.15, 4.0, 0.01, 0.5));
  CHECK(c.rule == CertificateRule::MainTheoremII);
  CHECK(c.witnesses.at("sigma") == doctest::Approx(kTau_2).epsilon(1e-9));
  c = certify(synthetic(0.0, 1.5, 0.2, 4.0, 0.01, 0.5));
  CHECK(c.rule != CertificateRule::MainTheoremII);

  // Large y with small oscillation.
  c = certify(synthetic(0.0, 3.0, 5.0, 2.5, 0.05, 0.05));
  CHECK(c.rule == CertificateRule::DirectOscillation);
  CHECK(c.lower_bound >= kTwoPiSq);

  // Nothing applies.
  c = certify(synthetic(0.0, 3.0, 3.0, 1.2, 0.05, 1.0));
  CHECK(c.status == CertificateStatus::Uncertified);
  CHECK(c.rule == CertificateRule::None);
  CHECK(c.lower_bound > 0.0);
  CHECK(c.lower_bound < kTwoPiSq);
  CHECK(c.lower_bound == doctest::Approx(max_lower_bound(c.lower_bounds)));
}

TEST_CASE("lower bound list") {
  const GeometryReport r = synthetic(0.0, 2.0, 1.0, 1.8, 0.02, 0.3);
  const auto bounds = willmore_lower_bounds(r);
  auto value = [&](const std::string& rule) {
    for (const LowerBound& b : bounds) {
      if (b.rule == rule) return b.value;
    }
    FAIL("missing rule " << rule);
    return 0.0;
  };
  const double yy = kPi * kPi * (2.0 + 0.5);
  CHECK(value("li_yau") == doctest::Approx(kPi * kPi));
  CHECK(value("systole") == doctest::Approx(kTwoPiSq / (1.8 * 1.02)));
  CHECK(value("direct_oscillation") == doctest::Approx(std::exp(-0.6) * yy));
  CHECK(value("q_bound_y") == doctest::Approx(yy / Q_bound(1.0, 2.0, 2.0)));
  CHECK(value("q_bound_v") == doctest::Approx(yy / Q_bound(1.0, 2.0, 1.8 * 1.02)));
  const nlohmann::json j = certify(r);
  CHECK(j.at("status") == "Uncertified");
}

TEST_CASE("mid-range oscillation bound") {
  const TorusGrid g(ModuliPoint::make(0.0, 1.0), 32, 32);
  const ConformalTorusMetric m(
      ScalarField::sample(g, [](Vec2 w) { return 0.5 * std::cos(2.0 * kPi * w.x); }));
  const GeometryReport r = report(m, 2.0);
  const MidBoundCheck c = mid_bound_check(m, r);
  CHECK(c.v1 == doctest::Approx(-0.5));
  CHECK(c.v2 == doctest::Approx(0.5));
  CHECK(c.gap == doctest::Approx(1.0));
  CHECK(c.bound_a == doctest::Approx(r.K1 / 8.0));
  CHECK(c.holds);
  // {u >= 0.6} is empty.
  CHECK_THROWS_WITH_AS(mid_bound_check(m, r, -0.5, 0.6), "hypothesis not met", std::invalid_argument);
}
