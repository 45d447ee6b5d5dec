#include "willmore/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "willmore/bounds.hpp"
#include "willmore/generators.hpp"
#include "willmore/immersions.hpp"

namespace willmore::validation {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kP = 2.0;

const char* const kNames[kCriterionCount] = {
    "tau threshold",     "Gauss-Bonnet",      "oscillation bounds",
    "disk estimates",    "Loewner chain",     "Willmore energies",
    "cone family",       "threshold limits",  "Parseval areas"};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double draw(std::mt19937_64& rng) { return generators::uniform01(rng()); }

ModuliPoint random_moduli(std::mt19937_64& rng) {
  const double x = 0.5 * draw(rng);
  const double y = std::sqrt(1.0 - x * x) + 2.0 * draw(rng);
  return ModuliPoint::make(x, y, 1.0);
}

// Grid with roughly square cells: n2 follows the length of the second generator.
TorusGrid square_cell_grid(const ModuliPoint& m, int n1) {
  const int n2 = std::max(8, 2 * static_cast<int>(std::lround(n1 * std::hypot(m.x, m.y) / 2.0)));
  return TorusGrid(m, n1, n2);
}

// ---------------------------------------------------------------------------
// Corpus of metrics with K_p < 4 pi shared by criteria 3 and 5.

struct CorpusEntry {
  std::string kind;
  GeometryReport report;
};

constexpr int kRandomCount = 80;
constexpr int kConeCount = 20;
constexpr double kCorpusMargin = 0.05;

std::vector<CorpusEntry> build_corpus(Scale scale) {
  const int n1 = scale == Scale::Quick ? 64 : 128;
  std::mt19937_64 rng(20240611);
  std::vector<CorpusEntry> corpus;
  corpus.reserve(kRandomCount + kConeCount);

  for (int i = 0; i < kRandomCount; ++i) {
    const TorusGrid grid = square_cell_grid(random_moduli(rng), n1);
    const int modes = 1 + static_cast<int>(6.0 * draw(rng));
    double amplitude = 0.01 + 0.4 * draw(rng);
    const std::uint64_t seed = rng();
    for (;;) {
      const ConformalTorusMetric m = generators::random_trig_metric(grid, modes, amplitude, seed);
      const double Kp = curvature_functionals(m, kP).Kp;
      if (Kp < kFourPi - kCorpusMargin) {
        corpus.push_back({"random", report(m, kP)});
        break;
      }
      amplitude *= 0.9 * kFourPi / Kp;
    }
  }

  for (int i = 0; i < kConeCount; ++i) {
    generators::ConeSpec spec;
    spec.grid = square_cell_grid(random_moduli(rng), n1);
    spec.R = 0.15 + 0.05 * draw(rng);
    spec.smoothing = spec.R * (0.5 + 0.5 * draw(rng));
    spec.beta = 0.9 + 0.6 * draw(rng);
    const double log_rho_ratio = 0.2 + 0.6 * draw(rng);
    spec.center_i = static_cast<int>(spec.grid.n1() * draw(rng));
    spec.center_j = static_cast<int>(spec.grid.n2() * draw(rng));
    for (;;) {
      spec.H = spec.R * (1.0 - std::exp(-log_rho_ratio)) / std::sin(spec.beta);
      const ConformalTorusMetric m = generators::generate_cone(spec);
      if (curvature_functionals(m, kP).Kp < kFourPi - kCorpusMargin) {
        corpus.push_back({"cone", report(m, kP)});
        break;
      }
      spec.beta = std::min(0.5 * kPi - 0.01, spec.beta + 0.1);
    }
  }
  return corpus;
}

// ---------------------------------------------------------------------------

CriterionResult tau_threshold() {
  CriterionResult out;
  const auto t0 = std::chrono::steady_clock::now();
  const double t = tau(2.0, kP);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double err = std::abs(t - kTauReference);
  out.passed = err <= kTauTolerance && secs < kTauSeconds;
  out.detail = fmt("tau(2,2)=%.10f |err|=%.2e in %.3f s", t, err, secs);
  return out;
}

CriterionResult gauss_bonnet() {
  CriterionResult out;
  std::mt19937_64 rng(7331);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    const TorusGrid grid(random_moduli(rng), 128, 128);
    const int modes = 1 + static_cast<int>(8.0 * draw(rng));
    const double amplitude = 0.1 + 1.4 * draw(rng);
    const ConformalTorusMetric m = generators::random_trig_metric(grid, modes, amplitude, rng());
    const double residual = std::abs(gauss_bonnet_residual(m));
    const double K1 = curvature_functionals(m, kP).K1;
    const double ratio = residual / (1.0 + K1);
    worst = std::max(worst, ratio);
    if (ratio > kGaussBonnetTolerance) ++violations;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.passed = violations == 0 && secs < kGaussBonnetSeconds;
  out.detail = fmt("50 metrics, max |residual|/(1+K1)=%.2e, %d violations, %.2f s", worst,
                   violations, secs);
  return out;
}

CriterionResult oscillation_bounds(const std::vector<CorpusEntry>& corpus) {
  CriterionResult out;
  int violations = 0;
  double worst = 0.0;  // largest osc / bound
  int cones = 0;
  for (const CorpusEntry& e : corpus) {
    const OscBoundCheck c = osc_bound_check(e.report);
    if (!c.holds) ++violations;
    worst = std::max(worst, c.osc / std::min(c.bound_a, c.bound_b));
    if (e.kind == "cone") ++cones;
  }
  out.passed = corpus.size() == kRandomCount + kConeCount && violations == 0;
  out.detail = fmt("%zu metrics (%d cones), %d violations, max osc/S=%.3f", corpus.size(), cones,
                   violations, worst);
  return out;
}

CriterionResult disk_estimates() {
  CriterionResult out;
  int violations = 0;
  int max_cases = 0;
  int count = 0;
  for (int i = 0; i < 50; ++i) {
    const auto profile = i % 2 == 0 ? generators::DiskProfile::Cap : generators::DiskProfile::Well;
    const int k = 3 + (i / 2) % 3;
    // Magnitudes log-spaced over [0.01, 3].
    const double magnitude = 0.01 * std::pow(300.0, (i / 2) / 24.0);
    const generators::DiskField field = generators::disk_test_field(profile, magnitude, 256, k);
    const generators::DiskFunctionals f = generators::disk_functionals(field, kP);
    ++count;
    if (f.Kp_plus < 2.0 * kPi - kPoleGuard) {
      ++max_cases;
      if (field.max_u() > disk_max_bound(f.Kp_plus, kP)) ++violations;
    }
    if (field.min_u() < disk_min_bound(f.Kp_minus, kP)) ++violations;
  }
  out.passed = violations == 0 && max_cases > 0;
  out.detail = fmt("%d fields, %d with K+ < 2pi, %d violations", count, max_cases, violations);
  return out;
}

CriterionResult loewner_chain(const std::vector<CorpusEntry>& corpus) {
  CriterionResult out;
  const double flat_min = std::sqrt(3.0) / 2.0 - 1e-12;
  int violations = 0;
  double max_tol = 0.0;
  for (const CorpusEntry& e : corpus) {
    const GeometryReport& r = e.report;
    max_tol = std::max(max_tol, r.tol_sys);
    const bool ok = r.V_g0 >= flat_min && r.V_g >= r.V_g0 * (1.0 - r.tol_sys) &&
                    r.V_g <= std::exp(2.0 * r.osc_u) * r.V_g0 * (1.0 + r.tol_sys) &&
                    r.tol_sys <= kMaxSystoleTolerance;
    if (!ok) ++violations;
  }
  out.passed = !corpus.empty() && violations == 0;
  out.detail = fmt("%zu metrics, %d violations, max tol_sys=%.4f", corpus.size(), violations, max_tol);
  return out;
}

CriterionResult willmore_energies() {
  CriterionResult out;
  const double two_pi2 = 2.0 * kPi * kPi;
  const double clifford = willmore_energy_conformal(clifford_torus(128));
  const double clifford_err = std::abs(clifford / two_pi2 - 1.0);
  const double w_sqrt2 = willmore_energy_revolution(std::sqrt(2.0), 1.0);
  const double w_2 = willmore_energy_revolution(2.0, 1.0);
  const double err_sqrt2 = std::abs(w_sqrt2 / two_pi2 - 1.0);
  const double err_2 = std::abs(w_2 / (4.0 * kPi * kPi / std::sqrt(3.0)) - 1.0);
  int failing = 0;
  std::string failed_names;
  for (const NamedImmersion& b : builtin_immersions(128)) {
    if (!verify_lower_bounds(b.torus, kP).all_hold) {
      ++failing;
      failed_names += " " + b.name;
    }
  }
  out.passed = clifford_err <= kCliffordTolerance && err_sqrt2 <= kRevolutionTolerance &&
               err_2 <= kRevolutionTolerance && failing == 0;
  out.detail = fmt("Clifford rel err %.2e, revolution rel err %.2e / %.2e, lower bounds fail on %d",
                   clifford_err, err_sqrt2, err_2, failing) +
               failed_names;
  return out;
}

// int K_g darea_g over the flat disk of radius r about a grid node.
double signed_curvature_within(const ConformalTorusMetric& m, int ci, int cj, double radius) {
  const TorusGrid& g = m.grid();
  const ScalarField K = gaussian_curvature(m);
  const Vec2 c = g.point(ci, cj);
  double sum = 0.0;
  for (int i = 0; i < g.n1(); ++i) {
    for (int j = 0; j < g.n2(); ++j) {
      if (norm(g.wrap(g.point(i, j) - c)) < radius) {
        sum += K(i, j) * std::exp(2.0 * m.u()(i, j));
      }
    }
  }
  return sum * g.cell_area();
}

CriterionResult cone_family() {
  CriterionResult out;
  std::string detail;
  bool ok = true;
  const TorusGrid grid(ModuliPoint::make(0.0, 1.0, 1.0), 512, 512);
  for (const double beta : {0.0, kPi / 6.0, kPi / 4.0}) {
    generators::ConeSpec spec;
    spec.R = 0.2;
    spec.smoothing = spec.R / 16.0;
    spec.grid = grid;
    spec.center_i = 256;
    spec.center_j = 256;
    spec.beta = beta;
    double lower = 0.0;
    if (beta == 0.0) {
      spec.H = spec.R;
      lower = spec.H / spec.R;
    } else {
      const double rho = spec.R / std::exp(0.5);
      spec.H = (spec.R - rho) / std::sin(beta);
      lower = (1.0 / std::sin(beta) - 1.0) * 0.5;
    }
    const ConformalTorusMetric m = generators::generate_cone(spec);
    const CurvatureFunctionals f = curvature_functionals(m, kP);
    const double target = kFourPi * (1.0 - std::sin(beta));
    const double err = std::abs(f.K1 / target - 1.0);
    const double osc = oscillation(m);
    // The tip band carries +2pi(1 - sin beta), the rim the negative of it.
    const generators::RadialProfile profile = spec.profile();
    const double tip = signed_curvature_within(m, spec.center_i, spec.center_j,
                                               0.5 * (profile.r_top() + profile.R()));
    const double tip_err = tip / (0.5 * target) - 1.0;
    ok = ok && err <= kConeCurvatureTolerance && osc >= lower &&
         std::abs(tip_err) <= kConeCurvatureTolerance;
    detail += fmt("beta=%.3f K1 err %.2e tip err %.2e osc %.3f>=%.3f; ", beta, err, tip_err, osc,
                  lower);
  }

  const auto family = generators::unbounded_oscillation_family(0.0, 4);
  std::vector<double> K1, A, sys, osc;
  for (const auto& member : family) {
    const GeometryReport r = report(member.metric, kP);
    K1.push_back(r.K1);
    A.push_back(r.area_g);
    sys.push_back(r.sys_g);
    osc.push_back(r.osc_u);
  }
  auto variation = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi / *lo - 1.0;
  };
  const double vK = variation(K1);
  const double vA = variation(A);
  const double vS = variation(sys);
  const double growth = osc.back() / osc.front();
  ok = ok && family.size() == 4 && vK < kFamilyVariation && vA < kFamilyVariation &&
       vS < kFamilyVariation && growth >= kFamilyGrowth;
  detail += fmt("family K1/area/sys variation %.2e/%.2e/%.2e, osc growth %.2fx", vK, vA, vS, growth);
  out.passed = ok;
  out.detail = detail;
  return out;
}

// Root of 2 S(K, p, y) = log((y + 1/y)/2) in K by TOMS 748, independent of
// the bisection used by tau().
double tau_toms748(double y, double p) {
  const double target = std::log(0.5 * (y + 1.0 / y));
  auto f = [&](double K) { return 2.0 * S_bound(K, p, y) - target; };
  std::uintmax_t iterations = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, 0.0, kFourPi - kPoleGuard, boost::math::tools::eps_tolerance<double>(52), iterations);
  return 0.5 * (r.first + r.second);
}

CriterionResult threshold_limits() {
  CriterionResult out;
  const double t1 = tau(1.001, kP);
  const double t2 = tau(1.01, kP);
  const double t3 = tau(1.1, kP);
  const double t4 = tau(2.0, kP);
  bool ok = 0.0 < t1 && t1 < t2 && t2 < t3 && t3 < t4;
  double worst = -1e300;  // largest sigma - min(sigma1, dense tau)
  for (const double V : {1.05, 1.5, 2.0, 4.0, 10.0, 25.0}) {
    const double s = sigma(V, kP);
    const double lo = std::sqrt(V);
    double dense = 1e300;
    for (int i = 0; i < 4096; ++i) {
      const double v = lo + (V - lo) * i / 4095.0;
      dense = std::min(dense, tau_toms748(v, kP));
    }
    const double reference = std::min(sigma1(V, kP), dense);
    worst = std::max(worst, s - reference);
    ok = ok && s <= reference + kSigmaSlack;
  }
  out.passed = ok;
  out.detail = fmt("tau(1.001,1.01,1.1,2)=%.3e,%.3e,%.3e,%.5f; max sigma-reference=%.2e", t1, t2,
                   t3, t4, worst);
  return out;
}

CriterionResult parseval_areas() {
  CriterionResult out;
  double worst = 0.0;
  int count = 0;
  for (const NamedImmersion& b : builtin_immersions(128)) {
    const auto* t = std::get_if<ConformalGridImmersion>(&b.torus);
    if (t == nullptr) continue;
    const ParsevalAreas a = parseval_area_identities(*t);
    const double hi = std::max({a.area_e1, a.area_e2, a.area_quad});
    const double lo = std::min({a.area_e1, a.area_e2, a.area_quad});
    worst = std::max(worst, (hi - lo) / hi);
    ++count;
  }
  out.passed = count > 0 && worst <= kParsevalTolerance;
  out.detail = fmt("%d immersions, max relative spread %.2e", count, worst);
  return out;
}

CriterionResult run(int id, Scale scale, std::optional<std::vector<CorpusEntry>>& corpus) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("unknown criterion");
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    auto shared = [&]() -> const std::vector<CorpusEntry>& {
      if (!corpus) corpus = build_corpus(scale);
      return *corpus;
    };
    switch (id) {
      case 1: r = tau_threshold(); break;
      case 2: r = gauss_bonnet(); break;
      case 3: r = oscillation_bounds(shared()); break;
      case 4: r = disk_estimates(); break;
      case 5: r = loewner_chain(shared()); break;
      case 6: r = willmore_energies(); break;
      case 7: r = cone_family(); break;
      case 8: r = threshold_limits(); break;
      case 9: r = parseval_areas(); break;
    }
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.id = id;
  r.name = kNames[id - 1];
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, Scale scale) {
  std::optional<std::vector<CorpusEntry>> corpus;
  return run(id, scale, corpus);
}

std::vector<CriterionResult> run_all(
    Scale scale, const std::function<void(const CriterionResult&)>& on_result) {
  std::optional<std::vector<CorpusEntry>> corpus;
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run(id, scale, corpus));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << ": " << r.detail
    << fmt(" (%.2f s)", r.seconds);
  return s.str();
}

void to_json(nlohmann::json& j, const CriterionResult& r) {
  j = nlohmann::json{{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"detail", r.detail},
                     {"seconds", r.seconds}};
}

}  // namespace willmore::validation
