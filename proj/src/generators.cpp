#include "willmore/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "quadrature.hpp"

namespace willmore::generators {

namespace {

constexpr double kPi = std::numbers::pi;

double smootherstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

template <typename F>
double composite(F&& f, double a, double b, int panels) {
  if (!(b > a)) return 0.0;
  const auto& rule = detail::gauss20();
  double sum = 0.0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) sum += detail::integrate_panel(rule, f, a + k * h, a + (k + 1) * h);
  return sum;
}

}  // namespace

RadialProfile::RadialProfile(double b, double R, double log_ratio, double smoothing)
    : b_(b), R_(R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("R must be positive");
  if (!(smoothing > 0.0) || smoothing > R) {
    throw std::invalid_argument("smoothing must lie in (0, R]");
  }
  if (!(log_ratio >= 0.0) || !std::isfinite(log_ratio)) {
    throw std::invalid_argument("log ratio must be finite and nonnegative");
  }
  if (!std::isfinite(b)) throw std::invalid_argument("b must be finite");
  r_top_ = R * std::exp(-log_ratio);
  r_cap_ = std::max(0.0, r_top_ - smoothing);
  r_out_ = R + smoothing;
  u_R_ = -integral_f_over_r(R_, r_out_);
  u_top_ = u_R_ - b_ * std::log(R_ / r_top_);
  u_cap_ = u_top_ - integral_f_over_r(r_cap_, r_top_);
}

double RadialProfile::f(double r) const {
  if (r <= r_cap_) return 0.0;
  if (r < r_top_) return b_ * smootherstep((r - r_cap_) / (r_top_ - r_cap_));
  if (r <= R_) return b_;
  if (r < r_out_) return b_ * (1.0 - smootherstep((r - R_) / (r_out_ - R_)));
  return 0.0;
}

double RadialProfile::integral_f_over_r(double a, double c) const {
  if (!(c > a)) return 0.0;
  return detail::integrate_panel(detail::gauss20(), [this](double s) { return f(s) / s; }, a, c);
}

double RadialProfile::u(double r) const {
  r = std::abs(r);
  if (r >= r_out_) return 0.0;
  if (r >= R_) return -integral_f_over_r(r, r_out_);
  if (r >= r_top_) return u_R_ - b_ * std::log(R_ / r);
  if (r >= r_cap_) return u_top_ - integral_f_over_r(r, r_top_);
  return u_cap_;
}

double RadialProfile::area_excess() const {
  auto ring = [this](double r) { return (std::exp(2.0 * u(r)) - 1.0) * 2.0 * kPi * r; };
  double total = kPi * r_cap_ * r_cap_ * std::expm1(2.0 * u_cap_);
  total += composite(ring, r_cap_, r_top_, 8);
  // On the cone e^{2u} = e^{2 u_R} (r/R)^{2b}.
  if (R_ > r_top_) {
    const double e = 2.0 * b_ + 2.0;
    const double scale = 2.0 * kPi * std::exp(2.0 * u_R_);
    double power;
    if (std::abs(e) < 1e-12) {
      power = R_ * R_ * std::log(R_ / r_top_);
    } else {
      power = R_ * R_ * (1.0 - std::pow(r_top_ / R_, e)) / e;
    }
    total += scale * power - kPi * (R_ * R_ - r_top_ * r_top_);
  }
  total += composite(ring, R_, r_out_, 8);
  return total;
}

double ConeSpec::rho() const { return R - H * std::sin(beta); }

double ConeSpec::log_ratio() const {
  if (beta == 0.0) return H / R;
  return std::log(R / rho()) / std::sin(beta);
}

RadialProfile ConeSpec::profile() const {
  if (!(R > 0.0) || !(H > 0.0) || !std::isfinite(R) || !std::isfinite(H)) {
    throw std::invalid_argument("cone needs R > 0 and H > 0");
  }
  if (!(beta >= 0.0) || beta > 0.5 * kPi) throw std::invalid_argument("beta must lie in [0, pi/2]");
  if (!(rho() > 0.0)) throw std::invalid_argument("cone needs rho = R - H sin(beta) > 0");
  return RadialProfile(std::sin(beta) - 1.0, R, log_ratio(), smoothing);
}

ConformalTorusMetric sample_radial(const RadialProfile& profile, const TorusGrid& grid,
                                   int center_i, int center_j) {
  if (center_i < 0 || center_j < 0 || center_i >= grid.n1() || center_j >= grid.n2()) {
    throw std::invalid_argument("center must be a grid node");
  }
  const ModuliPoint& m = grid.moduli();
  if (!(2.0 * profile.support_radius() < m.scale * std::min(1.0, m.y))) {
    throw std::invalid_argument("cone does not fit");
  }
  const Vec2 c = grid.point(center_i, center_j);
  std::vector<double> u(grid.size());
  for (int i = 0; i < grid.n1(); ++i) {
    for (int j = 0; j < grid.n2(); ++j) {
      const Vec2 d = grid.wrap(grid.point(i, j) - c);
      u[grid.index(i, j)] = profile.u(norm(d));
    }
  }
  return ConformalTorusMetric(ScalarField(grid, std::move(u)));
}

ConformalTorusMetric generate_cone(const ConeSpec& spec) {
  const ModuliPoint& m = spec.grid.moduli();
  const RadialProfile profile = spec.profile();
  if (!(4.0 * spec.R < m.scale * std::min(1.0, m.y))) throw std::invalid_argument("cone does not fit");
  return sample_radial(profile, spec.grid, spec.center_i, spec.center_j);
}

ConformalTorusMetric generate_cylinder(double R, double H, const TorusGrid& grid, int center_i,
                                       int center_j, double smoothing) {
  ConeSpec spec;
  spec.R = R;
  spec.H = H;
  spec.beta = 0.0;
  spec.smoothing = smoothing;
  spec.grid = grid;
  spec.center_i = center_i;
  spec.center_j = center_j;
  return generate_cone(spec);
}

std::vector<FamilyMember> unbounded_oscillation_family(double beta, int steps,
                                                       const FamilyOptions& options) {
  if (steps < 2) throw std::invalid_argument("family needs at least 2 steps");
  if (!(beta >= 0.0) || !(beta < 0.5 * kPi)) throw std::invalid_argument("beta must lie in [0, pi/2)");
  if (!(options.growth > 1.0)) throw std::invalid_argument("growth must exceed 1");
  const double b = std::sin(beta) - 1.0;
  const int n = options.n;
  const double w = options.smoothing_cells / n;
  const TorusGrid grid(ModuliPoint{0.0, 1.0, 1.0}, n, n);
  if (!(4.0 * options.R0 < 1.0)) throw std::invalid_argument("cone does not fit");

  const RadialProfile first(b, options.R0, options.log_ratio0, w);
  const double target_excess = first.area_excess();

  // R with area_excess(R, L) = target_excess; excess increases with R.
  auto radius_for = [&](double L) {
    double lo = w;
    double hi = options.R0;
    if (RadialProfile(b, lo, L, w).area_excess() > target_excess) {
      throw std::runtime_error("family step cannot keep the area fixed");
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (RadialProfile(b, mid, L, w).area_excess() > target_excess) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto osc_for = [&](double L) { return RadialProfile(b, radius_for(L), L, w).u(0.0); };

  std::vector<FamilyMember> family;
  auto push = [&](double R, double L) {
    const RadialProfile prof(b, R, L, w);
    family.push_back({sample_radial(prof, grid, n / 2, n / 2), R, L, prof.u(0.0), prof.area_excess()});
  };
  push(options.R0, options.log_ratio0);

  for (int step = 1; step < steps; ++step) {
    const double target = options.growth * family.back().osc;
    double lo = family.back().log_ratio;
    double hi = lo + 1.0;
    while (osc_for(hi) < target) {
      lo = hi;
      hi = lo + 2.0 * (hi - family.back().log_ratio);
      if (hi > 200.0) throw std::runtime_error("family oscillation target unreachable");
    }
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (osc_for(mid) < target) lo = mid; else hi = mid;
    }
    const double L = 0.5 * (lo + hi);
    push(radius_for(L), L);
  }
  return family;
}

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

ConformalTorusMetric random_trig_metric(const TorusGrid& grid, int modes, double amplitude,
                                        std::uint64_t seed) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("amplitude must be nonnegative");
  }
  if (modes < 0) throw std::invalid_argument("modes must be nonnegative");
  constexpr int kMaxLabel = 3;
  std::vector<std::pair<int, int>> labels;  // (p, q), one of each +- pair
  for (int q = 0; q <= kMaxLabel; ++q) {
    for (int p = -kMaxLabel; p <= kMaxLabel; ++p) {
      if (q == 0 && p <= 0) continue;
      labels.emplace_back(p, q);
    }
  }
  if (modes > static_cast<int>(labels.size())) {
    throw std::invalid_argument("at most " + std::to_string(labels.size()) + " modes available");
  }
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates with a portable index draw.
  for (int k = 0; k < modes; ++k) {
    const auto span = labels.size() - static_cast<std::size_t>(k);
    const auto pick = static_cast<std::size_t>(k) +
                      std::min(span - 1, static_cast<std::size_t>(uniform01(rng()) * span));
    std::swap(labels[static_cast<std::size_t>(k)], labels[pick]);
  }
  struct Mode {
    Vec2 xi;
    double coefficient;
    double phase;
  };
  const ModuliPoint& m = grid.moduli();
  std::vector<Mode> chosen;
  for (int k = 0; k < modes; ++k) {
    const auto [p, q] = labels[static_cast<std::size_t>(k)];
    const Vec2 xi{q / m.scale, (p - q * m.x) / (m.y * m.scale)};
    const double c = 0.5 + 0.5 * uniform01(rng());
    const double phase = 2.0 * kPi * uniform01(rng());
    chosen.push_back({xi, c, phase});
  }
  ScalarField u = ScalarField::sample(grid, [&](Vec2 w) {
    double s = 0.0;
    for (const Mode& md : chosen) s += md.coefficient * std::cos(2.0 * kPi * dot(md.xi, w) + md.phase);
    return s;
  });
  const auto range = kernels::min_max(u.samples());
  const double osc = range.max - range.min;
  const double factor = osc > 0.0 ? amplitude / osc : 0.0;
  for (double& v : u.samples()) v *= factor;
  return ConformalTorusMetric(std::move(u));
}

double DiskField::max_u() const { return *std::max_element(u.begin(), u.end()); }
double DiskField::min_u() const { return *std::min_element(u.begin(), u.end()); }

DiskField disk_test_field(DiskProfile profile, double magnitude, int n, int k) {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw std::invalid_argument("magnitude must be nonnegative");
  }
  if (k < 2) throw std::invalid_argument("disk profile exponent must be at least 2");
  if (n < 4) throw std::invalid_argument("disk quadrature needs at least 4 nodes");
  const detail::GaussRule rule = detail::gauss_legendre(n);
  const double sign = profile == DiskProfile::Cap ? 1.0 : -1.0;
  DiskField field;
  field.profile = profile;
  field.magnitude = magnitude;
  field.k = k;
  // The centre is added as a zero-weight node so max/min see u(0).
  field.r.push_back(0.0);
  field.weight.push_back(0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = 0.5 * (rule.nodes[i] + 1.0);
    field.r.push_back(r);
    field.weight.push_back(0.5 * rule.weights[i] * r);
  }
  for (double r : field.r) {
    const double s = 1.0 - r * r;
    field.u.push_back(sign * magnitude * std::pow(s, k));
    // Delta u = -(1/r)(r u')' = 4 k m (1 - r^2)^{k-2} (1 - k r^2).
    field.laplacian.push_back(laplacian_sign() * sign * 4.0 * k * magnitude * std::pow(s, k - 2) *
                              (1.0 - k * r * r));
  }
  return field;
}

DiskFunctionals disk_functionals(const DiskField& field, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  double area = 0.0;
  double all = 0.0;
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < field.r.size(); ++i) {
    const double e2u = std::exp(2.0 * field.u[i]);
    const double K = field.laplacian[i] / e2u;
    const double w = 2.0 * kPi * field.weight[i] * e2u;
    area += w;
    all += w * std::pow(std::abs(K), p);
    plus += w * std::pow(std::max(K, 0.0), p);
    minus += w * std::pow(std::max(-K, 0.0), p);
  }
  auto scaled = [&](double s) { return std::pow(s, 1.0 / p) * std::pow(area, 1.0 - 1.0 / p); };
  return {area, scaled(all), scaled(plus), scaled(minus)};
}

}  // namespace willmore::generators
