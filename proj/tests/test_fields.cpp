#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "willmore/fields.hpp"

using namespace willmore;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// xi for labels (p, q), written out independently of the library.
Vec2 xi(const ModuliPoint& m, int p, int q) {
  return {q / m.scale, (p - q * m.x) / (m.y * m.scale)};
}

ScalarField random_field(const TorusGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(g.size());
  for (double& x : v) x = d(rng);
  return ScalarField(g, v);
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.samples().size(); ++k) {
    m = std::max(m, std::abs(a.samples()[k] - b.samples()[k]));
  }
  return m;
}

}  // namespace

TEST_CASE("grid geometry") {
  const TorusGrid g(ModuliPoint::make(0.3, 1.2, 2.0), 16, 24);
  CHECK(g.area() == doctest::Approx(4.0 * 1.2));
  CHECK(g.cell_area() * 16 * 24 == doctest::Approx(g.area()));
  const Vec2 p = g.point(4, 6);
  CHECK(p.x == doctest::Approx(0.5 + 0.25 * 0.6));
  CHECK(p.y == doctest::Approx(0.25 * 2.4));
  // A full generator wraps to zero; a near generator to a small vector.
  const Vec2 w = g.wrap(g.moduli().v2() + Vec2{0.01, -0.02});
  CHECK(w.x == doctest::Approx(0.01));
  CHECK(w.y == doctest::Approx(-0.02));
  CHECK_THROWS_AS(TorusGrid(ModuliPoint{}, 4, 16), std::invalid_argument);
}

TEST_CASE("fields reject bad samples") {
  const TorusGrid g(ModuliPoint{}, 8, 8);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(63)), std::invalid_argument);
  std::vector<double> v(64, 0.0);
  v[5] = NAN;
  CHECK_THROWS_AS(ScalarField(g, v), std::invalid_argument);
  const ScalarField f = ScalarField::constant(g, 1.5);
  CHECK(f.at(-1, 9) == 1.5);
}

TEST_CASE("FFT agrees with the reference DFT") {
  for (const auto& [n1, n2] : {std::pair{8, 8}, std::pair{12, 10}, std::pair{16, 9}}) {
    const TorusGrid g(ModuliPoint::make(0.2, 1.3), n1, n2);
    const ScalarField u = random_field(g, 5 + n1);
    const FourierSpectrum a = dft(u);
    const FourierSpectrum b = reference_dft(u);
    REQUIRE(a.half().size() == b.half().size());
    for (std::size_t k = 0; k < a.half().size(); ++k) {
      CHECK(std::abs(a.half()[k] - b.half()[k]) < 1e-12);
    }
    CHECK(max_abs_diff(idft(a), u) < 1e-12);
  }
}

TEST_CASE("coefficients and amplitudes of plain modes") {
  const ModuliPoint m = ModuliPoint::make(0.35, 1.4, 1.3);
  const TorusGrid g(m, 32, 40);
  const Vec2 k = xi(m, 3, -2);
  const ScalarField u = ScalarField::sample(g, [&](Vec2 w) {
    const double t = kTwoPi * dot(k, w);
    return 0.7 + 1.25 * std::cos(t) - 0.4 * std::sin(t);
  });
  const FourierSpectrum s = dft(u);
  CHECK(s.coefficient(0, 0).real() == doctest::Approx(0.7));
  const CosSinAmplitude a = s.amplitude(3, -2);
  CHECK(a.cos == doctest::Approx(1.25));
  CHECK(a.sin == doctest::Approx(-0.4));
  const CosSinAmplitude b = s.amplitude(-3, 2);
  CHECK(b.cos == doctest::Approx(1.25));
  CHECK(b.sin == doctest::Approx(0.4));
  CHECK(s.frequency(3, -2).x == doctest::Approx(k.x));
  CHECK(s.frequency(3, -2).y == doctest::Approx(k.y));
  // Parseval: mean of squares.
  CHECK(s.energy() == doctest::Approx(0.49 + 0.5 * (1.25 * 1.25 + 0.4 * 0.4)));
  CHECK(s.energy_above_half_nyquist() < 1e-20);
  CHECK_THROWS_AS(s.coefficient(21, 0), std::out_of_range);
  CHECK_THROWS_AS(s.coefficient(0, 17), std::out_of_range);
}

TEST_CASE("high modes count as above half Nyquist") {
  const ModuliPoint m = ModuliPoint::make(0.0, 1.0);
  const TorusGrid g(m, 16, 16);
  const ScalarField u = ScalarField::sample(g, [&](Vec2 w) { return std::cos(kTwoPi * 6.0 * w.x); });
  const FourierSpectrum s = dft(u);
  CHECK(s.energy_above_half_nyquist() == doctest::Approx(s.energy()));
}

TEST_CASE("spectral Laplacian and derivatives on trigonometric fields") {
  CHECK(laplacian_sign() == 1.0);
  const ModuliPoint m = ModuliPoint::make(0.4, 1.25, 0.8);
  const TorusGrid g(m, 24, 32);
  const Vec2 k = xi(m, 2, 1);
  const double kk = dot(k, k);
  auto phase = [&](Vec2 w) { return kTwoPi * dot(k, w); };
  const ScalarField u = ScalarField::sample(g, [&](Vec2 w) { return std::cos(phase(w)); });

  const ScalarField lap_expected =
      ScalarField::sample(g, [&](Vec2 w) { return kTwoPi * kTwoPi * kk * std::cos(phase(w)); });
  CHECK(max_abs_diff(laplacian(u), lap_expected) < 1e-10);

  const ScalarField d1 = ScalarField::sample(g, [&](Vec2 w) { return -kTwoPi * k.x * std::sin(phase(w)); });
  const ScalarField d2 = ScalarField::sample(g, [&](Vec2 w) { return -kTwoPi * k.y * std::sin(phase(w)); });
  CHECK(max_abs_diff(derivative(u, Axis::W1), d1) < 1e-11);
  CHECK(max_abs_diff(derivative(u, Axis::W2), d2) < 1e-11);

  const ScalarField d12 = ScalarField::sample(
      g, [&](Vec2 w) { return -kTwoPi * kTwoPi * k.x * k.y * std::cos(phase(w)); });
  CHECK(max_abs_diff(second_derivative(u, Axis::W1, Axis::W2), d12) < 1e-10);
  // Delta = -(d11 + d22).
  ScalarField sum = second_derivative(u, Axis::W1, Axis::W1);
  const ScalarField d22 = second_derivative(u, Axis::W2, Axis::W2);
  for (std::size_t i = 0; i < sum.samples().size(); ++i) sum.samples()[i] = -(sum.samples()[i] + d22.samples()[i]);
  CHECK(max_abs_diff(sum, lap_expected) < 1e-10);

  const ScalarField gn = ScalarField::sample(
      g, [&](Vec2 w) { return kTwoPi * std::sqrt(kk) * std::abs(std::sin(phase(w))); });
  CHECK(max_abs_diff(grad_norm(u), gn) < 1e-11);
}

TEST_CASE("integration") {
  const ModuliPoint m = ModuliPoint::make(0.1, 1.5, 2.0);
  const TorusGrid g(m, 16, 20);
  CHECK(integrate(ScalarField::constant(g, 3.0)) == doctest::Approx(3.0 * g.area()));
  const ScalarField c = ScalarField::sample(g, [&](Vec2 w) { return std::cos(kTwoPi * dot(xi(m, 1, 1), w)); });
  CHECK(std::abs(integrate(c)) < 1e-12);
  CHECK(integrate(c, c) == doctest::Approx(0.5 * g.area()));
  const TorusGrid other(m, 16, 16);
  CHECK_THROWS_AS(integrate(c, ScalarField::constant(other, 1.0)), std::invalid_argument);
}
