#include "willmore/immersions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;

void require_coordinates(const ConformalGridImmersion& t) {
  if (t.F.size() < 3) throw std::invalid_argument("immersion needs at least 3 coordinates");
  for (const ScalarField& f : t.F) {
    if (!(f.grid() == t.grid)) throw std::invalid_argument("coordinate on a different grid");
  }
}

struct FirstDerivatives {
  std::vector<ScalarField> d1;
  std::vector<ScalarField> d2;
};

FirstDerivatives first_derivatives(const ConformalGridImmersion& t) {
  FirstDerivatives out;
  for (const ScalarField& f : t.F) {
    out.d1.push_back(derivative(f, Axis::W1));
    out.d2.push_back(derivative(f, Axis::W2));
  }
  return out;
}

struct Metric {
  std::vector<double> g11, g12, g22;
};

Metric induced_metric(const FirstDerivatives& d, std::size_t size) {
  Metric m{std::vector<double>(size, 0.0), std::vector<double>(size, 0.0),
           std::vector<double>(size, 0.0)};
  for (std::size_t c = 0; c < d.d1.size(); ++c) {
    const auto a = d.d1[c].samples();
    const auto b = d.d2[c].samples();
    for (std::size_t k = 0; k < size; ++k) {
      m.g11[k] += a[k] * a[k];
      m.g12[k] += a[k] * b[k];
      m.g22[k] += b[k] * b[k];
    }
  }
  return m;
}

template <typename F>
ConformalGridImmersion sample_immersion(const TorusGrid& grid, int dim, F&& coords) {
  std::vector<std::vector<double>> values(static_cast<std::size_t>(dim),
                                          std::vector<double>(grid.size()));
  for (int i = 0; i < grid.n1(); ++i) {
    for (int j = 0; j < grid.n2(); ++j) {
      const auto x = coords(grid.point(i, j));
      for (int c = 0; c < dim; ++c) values[static_cast<std::size_t>(c)][grid.index(i, j)] = x[c];
    }
  }
  ConformalGridImmersion t{grid, {}};
  for (auto& v : values) t.F.emplace_back(grid, std::move(v));
  return t;
}

int even_at_least(double v) {
  int n = static_cast<int>(std::ceil(v - 1e-9));
  if (n % 2) ++n;
  return std::max(n, 8);
}

// theta(sigma) inverting sigma(theta) = (2r / sqrt(R^2 - r^2)) atan(k' tan(theta/2)).
double revolution_theta(double R, double r, double sigma) {
  const double alpha = sigma * std::sqrt(R * R - r * r) / (2.0 * r);
  const double k = std::sqrt((R + r) / (R - r));
  // Continuous branch: theta/2 follows alpha through every half turn.
  const double turns = std::floor(alpha / kPi + 0.5);
  const double a = alpha - turns * kPi;
  return 2.0 * (std::atan(k * std::tan(a)) + turns * kPi);
}

void require_revolution(double R, double r) {
  if (!(r > 0.0) || !(R > r) || !std::isfinite(R)) {
    throw std::invalid_argument("self-intersecting profile");
  }
}

}  // namespace

ConformalityDefect conformality(const ConformalGridImmersion& t) {
  require_coordinates(t);
  const FirstDerivatives d = first_derivatives(t);
  const Metric m = induced_metric(d, t.grid.size());
  ConformalityDefect out;
  for (std::size_t k = 0; k < t.grid.size(); ++k) {
    const double e2u = 0.5 * (m.g11[k] + m.g22[k]);
    if (!(e2u > 0.0)) {
      out.max_relative = std::numeric_limits<double>::infinity();
      break;
    }
    const double defect = std::max(std::abs(m.g11[k] - m.g22[k]), 2.0 * std::abs(m.g12[k])) / e2u;
    out.max_relative = std::max(out.max_relative, defect);
  }
  out.conformal = out.max_relative <= kConformalityTolerance;
  return out;
}

ScalarField induced_conformal_factor(const ConformalGridImmersion& t) {
  if (!conformality(t).conformal) throw std::invalid_argument("parametrization not conformal");
  const FirstDerivatives d = first_derivatives(t);
  const Metric m = induced_metric(d, t.grid.size());
  std::vector<double> u(t.grid.size());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = 0.5 * std::log(0.5 * (m.g11[k] + m.g22[k]));
  return ScalarField(t.grid, std::move(u));
}

double willmore_energy_conformal(const ConformalGridImmersion& t) {
  const ScalarField u = induced_conformal_factor(t);
  std::vector<double> integrand(t.grid.size(), 0.0);
  for (const ScalarField& f : t.F) {
    const ScalarField lap = laplacian(f);
    const auto l = lap.samples();
    for (std::size_t k = 0; k < integrand.size(); ++k) integrand[k] += l[k] * l[k];
  }
  const auto uu = u.samples();
  for (std::size_t k = 0; k < integrand.size(); ++k) integrand[k] *= std::exp(-2.0 * uu[k]);
  return 0.25 * integrate(ScalarField(t.grid, std::move(integrand)));
}

double willmore_energy_second_fundamental_form(const ConformalGridImmersion& t) {
  require_coordinates(t);
  const FirstDerivatives d = first_derivatives(t);
  const std::size_t size = t.grid.size();
  const Metric m = induced_metric(d, size);
  const std::size_t dim = t.F.size();
  std::vector<ScalarField> f11, f12, f22;
  for (const ScalarField& f : t.F) {
    f11.push_back(second_derivative(f, Axis::W1, Axis::W1));
    f12.push_back(second_derivative(f, Axis::W1, Axis::W2));
    f22.push_back(second_derivative(f, Axis::W2, Axis::W2));
  }
  std::vector<double> density(size);
  std::vector<double> v(dim), h(dim);
  for (std::size_t k = 0; k < size; ++k) {
    const double det = m.g11[k] * m.g22[k] - m.g12[k] * m.g12[k];
    const double i11 = m.g22[k] / det;
    const double i12 = -m.g12[k] / det;
    const double i22 = m.g11[k] / det;
    // Mean curvature vector before normal projection: 1/2 g^{ab} F_ab.
    for (std::size_t c = 0; c < dim; ++c) {
      v[c] = 0.5 * (i11 * f11[c].samples()[k] + 2.0 * i12 * f12[c].samples()[k] +
                    i22 * f22[c].samples()[k]);
    }
    // Remove the tangential part g^{ab} <v, F_a> F_b.
    double p1 = 0.0, p2 = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      p1 += v[c] * d.d1[c].samples()[k];
      p2 += v[c] * d.d2[c].samples()[k];
    }
    const double t1 = i11 * p1 + i12 * p2;
    const double t2 = i12 * p1 + i22 * p2;
    double h2 = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      h[c] = v[c] - t1 * d.d1[c].samples()[k] - t2 * d.d2[c].samples()[k];
      h2 += h[c] * h[c];
    }
    density[k] = h2 * std::sqrt(det);
  }
  return integrate(ScalarField(t.grid, std::move(density)));
}

double willmore_energy_revolution(double R, double r) {
  require_revolution(R, r);
  auto integrand = [R, r](double theta) {
    const double c = std::cos(theta);
    const double H = (R + 2.0 * r * c) / (2.0 * r * (R + r * c));
    return H * H * r * (R + r * c);
  };
  // Periodic trapezoid rule, doubled until it settles.
  int n = 16;
  double previous = 0.0;
  double current = 0.0;
  for (int level = 0; level < 20; ++level) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += integrand(2.0 * kPi * k / n);
    current = 2.0 * kPi * (2.0 * kPi / n) * sum;
    if (level > 0 && std::abs(current - previous) <= 1e-14 * std::abs(current)) break;
    previous = current;
    n *= 2;
  }
  return current;
}

double willmore_energy_revolution_closed_form(double R, double r) {
  require_revolution(R, r);
  const double c = R / r;
  return kPi * kPi * c * c / std::sqrt(c * c - 1.0);
}

ParsevalAreas parseval_area_identities(const ConformalGridImmersion& t) {
  require_coordinates(t);
  const TorusGrid& g = t.grid;
  const int n1 = g.n1();
  const int n2 = g.n2();
  ParsevalAreas out;
  for (const ScalarField& f : t.F) {
    const FourierSpectrum spec = dft(f);
    const int cols = spec.half_cols();
    const auto half = spec.half();
    for (int m1 = 0; m1 < n1; ++m1) {
      const int q = m1 <= n1 / 2 ? m1 : m1 - n1;
      const bool nyq1 = n1 % 2 == 0 && m1 == n1 / 2;
      for (int m2 = 0; m2 < cols; ++m2) {
        const bool nyq2 = n2 % 2 == 0 && m2 == n2 / 2;
        const double multiplicity = (m2 == 0 || nyq2) ? 1.0 : 2.0;
        const double c2 = std::norm(half[static_cast<std::size_t>(m1) * cols + m2]);
        if (c2 == 0.0) continue;
        // Average xi^2 over the representatives of Nyquist indices.
        double s1 = 0.0, s2 = 0.0;
        int count = 0;
        for (int a = 0; a < (nyq1 ? 2 : 1); ++a) {
          for (int b = 0; b < (nyq2 ? 2 : 1); ++b) {
            const Vec2 xi = spec.frequency(b ? -m2 : m2, a ? -q : q);
            s1 += xi.x * xi.x;
            s2 += xi.y * xi.y;
            ++count;
          }
        }
        out.area_e1 += multiplicity * c2 * 4.0 * kPi * kPi * s1 / count;
        out.area_e2 += multiplicity * c2 * 4.0 * kPi * kPi * s2 / count;
      }
    }
  }
  out.area_e1 *= g.area();
  out.area_e2 *= g.area();

  const FirstDerivatives d = first_derivatives(t);
  const Metric m = induced_metric(d, g.size());
  std::vector<double> density(g.size());
  for (std::size_t k = 0; k < density.size(); ++k) {
    density[k] = std::sqrt(std::max(0.0, m.g11[k] * m.g22[k] - m.g12[k] * m.g12[k]));
  }
  out.area_quad = integrate(ScalarField(g, std::move(density)));
  return out;
}

ConformalGridImmersion clifford_torus(int n) {
  const double s2 = std::sqrt(2.0);
  const TorusGrid grid(ModuliPoint::make(0.0, 1.0, s2 * kPi), n, n);
  return sample_immersion(grid, 4, [s2](Vec2 w) {
    return std::array<double, 4>{std::cos(s2 * w.x) / s2, std::sin(s2 * w.x) / s2,
                                 std::cos(s2 * w.y) / s2, std::sin(s2 * w.y) / s2};
  });
}

ConformalGridImmersion flat_product_torus(int n) {
  const TorusGrid grid(ModuliPoint::make(0.0, 2.0, 1.0), n, 2 * n);
  const double a = 1.0 / (2.0 * kPi);
  const double b = 2.0 * a;
  return sample_immersion(grid, 4, [a, b](Vec2 w) {
    return std::array<double, 4>{a * std::cos(2.0 * kPi * w.x), a * std::sin(2.0 * kPi * w.x),
                                 b * std::cos(kPi * w.y), b * std::sin(kPi * w.y)};
  });
}

ConformalGridImmersion conformal_revolution_torus(double R, double r, int n) {
  require_revolution(R, r);
  const double c = R / r;
  const double sigma_period = 2.0 * kPi / std::sqrt(c * c - 1.0);
  const double phi_period = 2.0 * kPi;
  // First generator along the shorter period.
  const bool sigma_first = sigma_period <= phi_period;
  const double shortp = sigma_first ? sigma_period : phi_period;
  const double longp = sigma_first ? phi_period : sigma_period;
  const double y = longp / shortp;
  const TorusGrid grid(ModuliPoint::make(0.0, y, shortp), n, even_at_least(n * y));
  return sample_immersion(grid, 3, [=](Vec2 w) {
    const double sigma = sigma_first ? w.x : w.y;
    const double phi = sigma_first ? w.y : w.x;
    const double theta = revolution_theta(R, r, sigma);
    const double rad = R + r * std::cos(theta);
    return std::array<double, 3>{rad * std::cos(phi), rad * std::sin(phi), r * std::sin(theta)};
  });
}

ConformalGridImmersion inverted_clifford_torus(int n) {
  ConformalGridImmersion t = clifford_torus(n);
  const std::array<double, 4> centre{0.35, 0.1, -0.2, 0.05};
  const std::size_t size = t.grid.size();
  for (std::size_t k = 0; k < size; ++k) {
    double r2 = 0.0;
    for (int c = 0; c < 4; ++c) {
      const double d = t.F[c].samples()[k] - centre[c];
      r2 += d * d;
    }
    for (int c = 0; c < 4; ++c) {
      auto s = t.F[c].samples();
      s[k] = centre[c] + (s[k] - centre[c]) / r2;
    }
  }
  return t;
}

ConformalGridImmersion angle_parametrized_revolution_torus(double R, double r, int n) {
  require_revolution(R, r);
  const TorusGrid grid(ModuliPoint::make(0.0, 1.0, 2.0 * kPi), n, n);
  return sample_immersion(grid, 3, [=](Vec2 w) {
    const double rad = R + r * std::cos(w.x);
    return std::array<double, 3>{rad * std::cos(w.y), rad * std::sin(w.y), r * std::sin(w.x)};
  });
}

std::vector<NamedImmersion> builtin_immersions(int n) {
  const double s2 = std::sqrt(2.0);
  std::vector<NamedImmersion> out;
  out.push_back({"clifford", clifford_torus(n), 2.0 * kPi * kPi});
  out.push_back({"flat_product", flat_product_torus(n), 2.5 * kPi * kPi});
  out.push_back({"inverted_clifford", inverted_clifford_torus(n), 2.0 * kPi * kPi});
  out.push_back({"revolution_sqrt2_conformal", conformal_revolution_torus(s2, 1.0, n),
                 willmore_energy_revolution_closed_form(s2, 1.0)});
  out.push_back({"revolution_2_conformal", conformal_revolution_torus(2.0, 1.0, n),
                 willmore_energy_revolution_closed_form(2.0, 1.0)});
  out.push_back({"revolution_sqrt2", RevolutionTorus{s2, 1.0},
                 willmore_energy_revolution_closed_form(s2, 1.0)});
  out.push_back({"revolution_2", RevolutionTorus{2.0, 1.0},
                 willmore_energy_revolution_closed_form(2.0, 1.0)});
  return out;
}

LowerBoundVerification verify_lower_bounds(const ImmersedTorus& t, double p, int n,
                                           const SystoleOptions& options) {
  LowerBoundVerification out;
  ScalarField u = std::visit(
      [&](const auto& torus) -> ScalarField {
        using T = std::decay_t<decltype(torus)>;
        if constexpr (std::is_same_v<T, RevolutionTorus>) {
          out.W = willmore_energy_revolution(torus.R, torus.r);
          return induced_conformal_factor(conformal_revolution_torus(torus.R, torus.r, n));
        } else {
          out.W = willmore_energy_conformal(torus);
          return induced_conformal_factor(torus);
        }
      },
      t);
  const ConformalTorusMetric metric(std::move(u));
  out.report = report(metric, p, options);
  out.certificate = certify(out.report);
  out.lower_bounds = out.certificate.lower_bounds;
  out.all_hold = true;
  for (const LowerBound& b : out.lower_bounds) {
    if (out.W < (1.0 - kBoundSlack) * b.value) out.all_hold = false;
  }
  if (out.W < (1.0 - kBoundSlack) * out.certificate.lower_bound) out.all_hold = false;
  return out;
}

}  // namespace willmore
