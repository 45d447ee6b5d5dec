#include "willmore/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiSq = 2.0 * kPi * kPi;

// Bisection for an increasing function f on [lo, hi] with f(lo) < 0 < f(hi),
// run until the bracket cannot shrink further in double precision.
template <typename F>
double bisect_increasing(F&& f, double lo, double hi) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Largest K accepted by S_bound.
double torus_K_max() { return 4.0 * kPi - kPoleGuard; }

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must exceed 1");
}

}  // namespace

double conjugate_exponent(double p) {
  require_p(p);
#ifdef WILLMORE_MUTANT_WRONG_EXPONENT
  return p / (p + 1.0);
#else
  return p / (p - 1.0);
#endif
}

BoundParams BoundParams::make(double K, double p, double V) {
  if (!std::isfinite(K) || K < 0.0) throw std::invalid_argument("K must be finite and nonnegative");
  if (!std::isfinite(V) || !(V > 0.0)) throw std::invalid_argument("V must be positive");
  return BoundParams{K, p, conjugate_exponent(p), V};
}

double S_bound(const BoundParams& bp) {
  const double K = bp.K;
  if (K > torus_K_max()) throw std::domain_error("S undefined at or above 4π");
  const double q = bp.q;
  return 0.5 * std::abs(std::log1p(-K / (4.0 * kPi))) +
         K / (8.0 * kPi - 2.0 * K) * q * std::log(2.0 * q) + q * K / (4.0 * kPi) + K * bp.V / 8.0;
}

double S_bound(double K, double p, double V) { return S_bound(BoundParams::make(K, p, V)); }

double Q_bound(const BoundParams& bp) { return std::exp(2.0 * S_bound(bp)); }

double Q_bound(double K, double p, double V) { return Q_bound(BoundParams::make(K, p, V)); }

double tau(double y, double p) {
  require_p(p);
  if (!std::isfinite(y)) throw std::invalid_argument("y must be finite");
  if (y <= 1.0) throw UnconstrainedThreshold("use region rules: τ is unconstrained for y ≤ 1");
  const double target = 0.5 * (y + 1.0 / y);
  return bisect_increasing([&](double K) { return Q_bound(K, p, y) - target; }, 0.0,
                           torus_K_max());
}

double sigma1(double V, double p) {
  require_p(p);
  if (!std::isfinite(V)) throw std::invalid_argument("V must be finite");
  if (V <= 1.0) throw UnconstrainedThreshold("use systole rule for 𝒱 ≤ 1");
  const double target = std::sqrt(V);
  return bisect_increasing([&](double K) { return Q_bound(K, p, V) - target; }, 0.0,
                           torus_K_max());
}

double sigma(double V, double p) {
  const double s1 = sigma1(V, p);
  const double a = std::sqrt(V);
  const double b = V;
  constexpr int kSamples = 256;
  auto v_at = [&](int k) { return a + (b - a) * k / (kSamples - 1); };
  int best_k = 0;
  double best = tau(v_at(0), p);
  for (int k = 1; k < kSamples; ++k) {
    const double t = tau(v_at(k), p);
    if (t < best) {
      best = t;
      best_k = k;
    }
  }
  // Golden-section refinement on the two neighbouring sample intervals.
  double lo = v_at(std::max(best_k - 1, 0));
  double hi = v_at(std::min(best_k + 1, kSamples - 1));
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = tau(c, p);
  double fd = tau(d, p);
  while (hi - lo > 1e-6) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = tau(c, p);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = tau(d, p);
    }
  }
  best = std::min({best, fc, fd});
  return std::min(s1, best);
}

double V_upper(const GeometryReport& r) {
  return r.V_g * (1.0 + r.tol_sys);
}

OscBoundCheck osc_bound_check(const GeometryReport& r) {
  if (!(r.Kp < torus_K_max())) throw std::domain_error("theorem hypothesis violated");
  OscBoundCheck c;
  c.osc = r.osc_u;
  c.bound_a = S_bound(r.Kp, r.p, r.V_g0);
  c.bound_b = S_bound(r.Kp, r.p, V_upper(r));
  c.holds_a = c.osc <= c.bound_a;
  c.holds_b = c.osc <= c.bound_b;
  c.holds = c.holds_a && c.holds_b;
  return c;
}

double disk_max_bound(double Kp_plus, double p) {
  if (!std::isfinite(Kp_plus) || Kp_plus < 0.0) throw std::invalid_argument("K+ must be nonnegative");
  if (Kp_plus > 2.0 * kPi - kPoleGuard) throw std::domain_error("disk bound requires 𝒦⁺_p < 2π");
  const double q = conjugate_exponent(p);
  return 0.5 * std::abs(std::log1p(-Kp_plus / (2.0 * kPi))) +
         Kp_plus / (4.0 * kPi - 2.0 * Kp_plus) * q * std::log(q);
}

double disk_min_bound(double Kp_minus, double p) {
  if (!std::isfinite(Kp_minus) || Kp_minus < 0.0) throw std::invalid_argument("K- must be nonnegative");
  return -conjugate_exponent(p) * Kp_minus / (4.0 * kPi);
}

MidBoundCheck mid_bound_check(const ConformalTorusMetric& metric, const GeometryReport& r,
                              double v1, double v2) {
  const TorusGrid& g = metric.grid();
  const auto u = metric.u().samples();
  std::vector<unsigned char> mask(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) mask[k] = u[k] >= v2;
  const bool upper = has_noncontractible_loop(g.n1(), g.n2(), mask);
  for (std::size_t k = 0; k < u.size(); ++k) mask[k] = u[k] <= v1;
  const bool lower = has_noncontractible_loop(g.n1(), g.n2(), mask);
  if (!upper || !lower) throw std::invalid_argument("hypothesis not met");
  MidBoundCheck c;
  c.v1 = v1;
  c.v2 = v2;
  c.gap = v2 - v1;
  c.bound_a = r.K1 * r.V_g0 / 8.0;
  c.bound_b = r.K1 * V_upper(r) / 8.0;
  c.holds = c.gap <= c.bound_a && c.gap <= c.bound_b;
  return c;
}

MidBoundCheck mid_bound_check(const ConformalTorusMetric& metric, const GeometryReport& r) {
  const LevelBand band = level_band(metric);
  return mid_bound_check(metric, r, band.v1, band.v2);
}

std::vector<LowerBound> willmore_lower_bounds(const GeometryReport& r) {
  const double y = r.y;
  const double yy = kPi * kPi * (y + 1.0 / y);
  std::vector<LowerBound> out;
  out.push_back({"li_yau", kTwoPiSq / y});
  const ModuliPoint m{r.x, r.y, 1.0};
  if (classify_region(m) == ModuliRegion::MontielRos) out.push_back({"montiel_ros", kTwoPiSq});
  out.push_back({"systole", kTwoPiSq / V_upper(r)});
  out.push_back({"direct_oscillation", std::exp(-2.0 * r.osc_u) * yy});
  if (r.Kp < torus_K_max()) {
    out.push_back({"q_bound_v", yy / Q_bound(r.Kp, r.p, V_upper(r))});
    out.push_back({"q_bound_y", yy / Q_bound(r.Kp, r.p, y)});
  }
  return out;
}

double max_lower_bound(const std::vector<LowerBound>& bounds) {
  double best = 0.0;
  for (const LowerBound& b : bounds) best = std::max(best, b.value);
  return best;
}

std::string_view to_string(CertificateStatus s) {
  return s == CertificateStatus::Certified ? "Certified" : "Uncertified";
}

std::string_view to_string(CertificateRule r) {
  switch (r) {
    case CertificateRule::LiYauRegion: return "LiYauRegion";
    case CertificateRule::MontielRosRegion: return "MontielRosRegion";
    case CertificateRule::SystoleBound: return "SystoleBound";
    case CertificateRule::MainTheoremI: return "MainTheoremI";
    case CertificateRule::MainTheoremII: return "MainTheoremII";
    case CertificateRule::DirectOscillation: return "DirectOscillation";
    case CertificateRule::None: return "None";
  }
  return "None";
}

Certificate certify(const GeometryReport& r) {
  Certificate c;
  c.lower_bounds = willmore_lower_bounds(r);
  c.lower_bound = max_lower_bound(c.lower_bounds);
  auto& w = c.witnesses;
  w["y"] = r.y;
  w["V_g"] = r.V_g;
  w["Kp"] = r.Kp;
  w["osc_u"] = r.osc_u;
  const double V_hi = V_upper(r);
  if (r.Kp < torus_K_max()) {
    w["S"] = S_bound(r.Kp, r.p, r.V_g0);
    w["Q"] = Q_bound(r.Kp, r.p, r.V_g0);
  }

  auto fire = [&](CertificateRule rule) {
    c.status = CertificateStatus::Certified;
    c.rule = rule;
    // Each rule is a theorem concluding W >= 2 pi^2.
    c.lower_bound = std::max(c.lower_bound, kTwoPiSq);
    return c;
  };

  const ModuliRegion region = classify_region(ModuliPoint{r.x, r.y, 1.0});
  if (region == ModuliRegion::LiYau) return fire(CertificateRule::LiYauRegion);
  if (region == ModuliRegion::MontielRos) return fire(CertificateRule::MontielRosRegion);
  w["V_g_upper"] = V_hi;
  if (V_hi <= 1.0) return fire(CertificateRule::SystoleBound);

  const double t = tau(r.y, r.p);
  w["tau"] = t;
  if (r.Kp < t) return fire(CertificateRule::MainTheoremI);

  // V(g) lies in [V_g, V_hi] and the rule must hold for all of it. sigma
  // tends to 0 as V decreases to 1, so an interval reaching down to 1 can
  // never certify.
  if (r.V_g > 1.0) {
    double s = std::numeric_limits<double>::infinity();
    constexpr int kIntervalSamples = 17;
    for (int k = 0; k < kIntervalSamples; ++k) {
      const double v = r.V_g + (V_hi - r.V_g) * k / (kIntervalSamples - 1);
      s = std::min(s, sigma(v, r.p));
    }
    w["sigma"] = s;
    if (r.Kp < s) return fire(CertificateRule::MainTheoremII);
  }

  if (std::exp(-2.0 * r.osc_u) * kPi * kPi * (r.y + 1.0 / r.y) >= kTwoPiSq) {
    return fire(CertificateRule::DirectOscillation);
  }
  return c;
}

Certificate certify(const ConformalTorusMetric& metric, double p, const SystoleOptions& options) {
  return certify(report(metric, p, options));
}

void to_json(nlohmann::json& j, const LowerBound& b) {
  j = nlohmann::json{{"rule", b.rule}, {"value", b.value}};
}

void to_json(nlohmann::json& j, const Certificate& c) {
  nlohmann::json witnesses = nlohmann::json::object();
  for (const auto& [k, v] : c.witnesses) witnesses[k] = v;
  j = nlohmann::json{{"status", to_string(c.status)},
                     {"rule", to_string(c.rule)},
                     {"lower_bound", c.lower_bound},
                     {"witnesses", witnesses},
                     {"lower_bounds", c.lower_bounds}};
}

}  // namespace willmore
