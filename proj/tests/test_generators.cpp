#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "willmore/generators.hpp"

using namespace willmore;
using namespace willmore::generators;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("radial profile structure") {
  const double b = std::sin(kPi / 6.0) - 1.0;
  const RadialProfile prof(b, 0.2, 1.0, 0.02);
  CHECK(prof.r_top() == doctest::Approx(0.2 * std::exp(-1.0)));
  CHECK(prof.r_cap() == doctest::Approx(prof.r_top() - 0.02));
  CHECK(prof.support_radius() == doctest::Approx(0.22));
  CHECK(prof.u(0.25) == 0.0);
  CHECK(prof.u(0.22) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(prof.f(0.1) == doctest::Approx(b));
  CHECK(prof.f(0.01) == 0.0);
  // Pure cone on [r_top, R].
  CHECK(prof.u(0.1) - prof.u(0.15) == doctest::Approx(b * std::log(0.1 / 0.15)));
  // Flat cap: u constant inside r_cap, equal to the maximum.
  CHECK(prof.u(0.0) == doctest::Approx(prof.u(prof.r_cap())));
  CHECK(prof.u(0.0) > prof.u(0.1));
  // f = r u' by central differences.
  for (const double r : {0.06, 0.07, 0.205, 0.215}) {
    const double h = 1e-6;
    CHECK(r * (prof.u(r + h) - prof.u(r - h)) / (2.0 * h) == doctest::Approx(prof.f(r)).epsilon(1e-6));
  }
  // u(0) = -b L plus the contribution of the two transition bands.
  CHECK(prof.u(0.0) > -b * 1.0);
}

TEST_CASE("radial area excess matches quadrature") {
  for (const double b : {0.0 - 1.0, std::sin(kPi / 4.0) - 1.0}) {
    const RadialProfile prof(b, 0.15, 0.6, 0.03);
    const double excess = 2.0 * kPi * simpson([&](double r) { return (std::exp(2.0 * prof.u(r)) - 1.0) * r; },
                                              0.0, prof.support_radius(), 20000);
    CHECK(prof.area_excess() == doctest::Approx(excess).epsilon(1e-8));
  }
}

TEST_CASE("cone spec") {
  ConeSpec spec;
  spec.R = 0.2;
  spec.beta = kPi / 6.0;
  spec.H = 0.2;
  CHECK(spec.rho() == doctest::Approx(0.2 - 0.2 * 0.5));
  CHECK(spec.log_ratio() == doctest::Approx(std::log(0.2 / 0.1) / 0.5));
  spec.beta = 0.0;
  CHECK(spec.log_ratio() == doctest::Approx(1.0));
}

TEST_CASE("cone generation errors") {
  ConeSpec spec;
  spec.grid = TorusGrid(ModuliPoint::make(0.0, 1.0), 64, 64);
  spec.R = 0.3;
  CHECK_THROWS_WITH_AS(generate_cone(spec), "cone does not fit", std::invalid_argument);
  spec.R = 0.1;
  spec.beta = 2.0;
  CHECK_THROWS_AS(generate_cone(spec), std::invalid_argument);
}

TEST_CASE("cone curvature at moderate resolution") {
  ConeSpec spec;
  spec.grid = TorusGrid(ModuliPoint::make(0.0, 1.0), 256, 256);
  spec.R = 0.2;
  spec.smoothing = 0.025;
  spec.beta = kPi / 6.0;
  spec.H = 0.15;
  spec.center_i = 100;
  spec.center_j = 40;
  const ConformalTorusMetric m = generate_cone(spec);
  const CurvatureFunctionals f = curvature_functionals(m, 2.0);
  CHECK(f.K1 == doctest::Approx(4.0 * kPi * 0.5).epsilon(0.02));
  CHECK(std::abs(gauss_bonnet_residual(m)) < 1e-8);
  // osc u = u(0) of the profile.
  CHECK(oscillation(m) == doctest::Approx(spec.profile().u(0.0)).epsilon(1e-6));
  CHECK(oscillation(m) >= (1.0 / std::sin(spec.beta) - 1.0) * std::log(spec.R / spec.rho()));
}

TEST_CASE("cylinder oscillation") {
  const TorusGrid g(ModuliPoint::make(0.0, 1.0), 256, 256);
  const ConformalTorusMetric m = generate_cylinder(0.2, 0.3, g, 128, 128, 0.025);
  CHECK(oscillation(m) >= 1.5);
  CHECK(curvature_functionals(m, 2.0).K1 == doctest::Approx(4.0 * kPi).epsilon(0.02));
}

TEST_CASE("random trigonometric metrics") {
  const TorusGrid g(ModuliPoint::make(0.2, 1.3), 32, 40);
  const ConformalTorusMetric a = random_trig_metric(g, 5, 0.8, 7);
  const ConformalTorusMetric b = random_trig_metric(g, 5, 0.8, 7);
  const ConformalTorusMetric c = random_trig_metric(g, 5, 0.8, 8);
  CHECK(std::equal(a.u().samples().begin(), a.u().samples().end(), b.u().samples().begin()));
  CHECK_FALSE(std::equal(a.u().samples().begin(), a.u().samples().end(), c.u().samples().begin()));
  CHECK(oscillation(a) == doctest::Approx(0.8).epsilon(1e-12));
  const FourierSpectrum s = dft(a.u());
  CHECK(s.energy_above_half_nyquist() < 1e-25);
  CHECK(std::abs(gauss_bonnet_residual(a)) < 1e-10);
  CHECK_THROWS_AS(random_trig_metric(g, -1, 0.8, 7), std::invalid_argument);
}

TEST_CASE("uniform01") {
  CHECK(uniform01(0) == 0.0);
  CHECK(uniform01(~std::uint64_t{0}) < 1.0);
  CHECK(uniform01(std::uint64_t{1} << 63) == 0.5);
}

TEST_CASE("unbounded oscillation family") {
  FamilyOptions opt;
  opt.n = 256;
  opt.R0 = 0.2;
  opt.log_ratio0 = 0.2;
  const auto fam = unbounded_oscillation_family(0.0, 3, opt);
  REQUIRE(fam.size() == 3);
  for (std::size_t k = 1; k < fam.size(); ++k) {
    CHECK(fam[k].osc == doctest::Approx(opt.growth * fam[k - 1].osc).epsilon(1e-6));
    CHECK(fam[k].area_excess == doctest::Approx(fam[0].area_excess).epsilon(1e-6));
    CHECK(fam[k].R < fam[k - 1].R);
  }
  CHECK(oscillation(fam[2].metric) == doctest::Approx(fam[2].osc).epsilon(1e-3));
}

TEST_CASE("disk test fields") {
  for (const int k : {3, 4, 5}) {
    const DiskField cap = disk_test_field(DiskProfile::Cap, 0.7, 64, k);
    CHECK(cap.max_u() == doctest::Approx(0.7));
    CHECK(cap.min_u() >= 0.0);
    const DiskField well = disk_test_field(DiskProfile::Well, 0.7, 64, k);
    CHECK(well.min_u() == doctest::Approx(-0.7));
    for (std::size_t i = 0; i < cap.r.size(); ++i) {
      const double r = cap.r[i];
      const double s = 1.0 - r * r;
      CHECK(cap.u[i] == doctest::Approx(0.7 * std::pow(s, k)));
      CHECK(cap.laplacian[i] == doctest::Approx(4.0 * k * 0.7 * std::pow(s, k - 2) * (1.0 - k * r * r)));
      CHECK(well.laplacian[i] == doctest::Approx(-cap.laplacian[i]));
    }
    // Radial weights integrate r dr over [0, 1].
    double w = 0.0;
    for (double x : cap.weight) w += x;
    CHECK(w == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(disk_test_field(DiskProfile::Cap, 1.0, 64, 1), std::invalid_argument);
  CHECK_THROWS_AS(disk_test_field(DiskProfile::Cap, 1.0, 2, 3), std::invalid_argument);
}

TEST_CASE("disk functionals") {
  const DiskField flat = disk_test_field(DiskProfile::Cap, 0.0, 64, 3);
  CHECK(disk_functionals(flat, 2.0).area == doctest::Approx(kPi));
  CHECK(disk_functionals(flat, 2.0).Kp == 0.0);

  // Total curvature int K dA = int Delta u dx = 0 for fields flat at the rim.
  const DiskField cap = disk_test_field(DiskProfile::Cap, 0.5, 128, 3);
  double total = 0.0;
  for (std::size_t i = 0; i < cap.r.size(); ++i) total += 2.0 * kPi * cap.weight[i] * cap.laplacian[i];
  CHECK(std::abs(total) < 1e-12);

  const DiskFunctionals f = disk_functionals(cap, 2.0);
  const double area = 2.0 * kPi * simpson([](double r) { return std::exp(std::pow(1.0 - r * r, 3)) * r; }, 0.0, 1.0, 4000);
  CHECK(f.area == doctest::Approx(area).epsilon(1e-10));
  CHECK(std::pow(f.Kp_plus, 2.0) + std::pow(f.Kp_minus, 2.0) == doctest::Approx(f.Kp * f.Kp));
  CHECK(f.Kp_plus > 0.0);
  CHECK(f.Kp_minus > 0.0);
}

TEST_CASE("cone and cylinder samples carry no high-frequency energy") {
  ConeSpec spec;
  spec.grid = TorusGrid(ModuliPoint::make(0.0, 1.0), 512, 512);
  spec.R = 0.2;
  spec.smoothing = 0.2 / 16.0;
  spec.beta = kPi / 6.0;
  spec.H = 0.1;
  spec.center_i = 256;
  spec.center_j = 256;
  const FourierSpectrum cone = dft(generate_cone(spec).u());
  CHECK(cone.energy_above_half_nyquist() < 1e-6 * cone.energy());
  const FourierSpectrum cyl = dft(generate_cylinder(0.2, 0.2, spec.grid, 256, 256, 0.2 / 16.0).u());
  CHECK(cyl.energy_above_half_nyquist() < 1e-6 * cyl.energy());
}
