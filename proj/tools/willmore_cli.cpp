#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "willmore/bounds.hpp"
#include "willmore/generators.hpp"
#include "willmore/immersions.hpp"
#include "willmore/io.hpp"
#include "willmore/kernels.hpp"
#include "willmore/validation.hpp"

namespace {

using namespace willmore;
using nlohmann::json;

constexpr int kExitCertified = 0;
constexpr int kExitError = 1;
constexpr int kExitUncertified = 2;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

// "lo:hi:count" or a single value.
Range parse_range(const std::string& s) {
  Range r;
  std::vector<std::string> parts;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  try {
    if (parts.size() == 1) {
      r.lo = r.hi = std::stod(parts[0]);
    } else if (parts.size() == 3) {
      r.lo = std::stod(parts[0]);
      r.hi = std::stod(parts[1]);
      r.count = std::stoi(parts[2]);
    } else {
      throw std::invalid_argument("");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("range must be VALUE or LO:HI:COUNT, got '" + s + "'");
  }
  if (r.count < 1 || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw std::invalid_argument("invalid range '" + s + "'");
  }
  return r;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

SystoleOptions systole_options(int stencil_radius) {
  SystoleOptions o;
  o.stencil_radius = stencil_radius;
  return o;
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
  std::string file;
  double p = 2.0;
  int stencil_radius = 0;
};

int cmd_certify(const CertifyArgs& a) {
  const ConformalTorusMetric metric(io::read_field_file(a.file));
  const GeometryReport r = report(metric, a.p, systole_options(a.stencil_radius));
  const Certificate c = certify(r);
  print({{"report", r}, {"certificate", c}});
  return c.status == CertificateStatus::Certified ? kExitCertified : kExitUncertified;
}

struct BoundArgs {
  std::optional<std::string> file;
  std::optional<double> K;
  std::optional<double> V;
  double p = 2.0;
  int stencil_radius = 0;
};

int cmd_bound(const BoundArgs& a) {
  if (a.file) {
    const ConformalTorusMetric metric(io::read_field_file(*a.file));
    const GeometryReport r = report(metric, a.p, systole_options(a.stencil_radius));
    json out{{"report", r}, {"lower_bounds", willmore_lower_bounds(r)}};
    if (r.Kp < 4.0 * std::numbers::pi - kPoleGuard) {
      const OscBoundCheck c = osc_bound_check(r);
      out["oscillation"] = {{"osc", c.osc}, {"bound_g0", c.bound_a}, {"bound_g", c.bound_b},
                            {"holds", c.holds}};
    }
    const MidBoundCheck mid = mid_bound_check(metric, r);
    out["level_gap"] = {{"v1", mid.v1}, {"v2", mid.v2}, {"gap", mid.gap},
                        {"bound_g0", mid.bound_a}, {"bound_g", mid.bound_b}, {"holds", mid.holds}};
    print(out);
    return kExitCertified;
  }
  if (!a.K || !a.V) throw CLI::ValidationError("bound", "either a field file or both --K and --V");
  const BoundParams bp = BoundParams::make(*a.K, a.p, *a.V);
  print({{"K", bp.K}, {"p", bp.p}, {"q", bp.q}, {"V", bp.V}, {"S", S_bound(bp)}, {"Q", Q_bound(bp)}});
  return kExitCertified;
}

int cmd_threshold(bool is_tau, double arg, double p) {
  conjugate_exponent(p);  // validates p
  try {
    std::cout << number(is_tau ? tau(arg, p) : sigma(arg, p)) << '\n';
  } catch (const UnconstrainedThreshold&) {
    std::cout << "unconstrained (region rule applies)\n";
  }
  return kExitCertified;
}

struct MapArgs {
  double p = 2.0;
  std::string xs = "0:0.5:11";
  std::string ys = "0.8:3:23";
  std::optional<std::string> out;
};

int cmd_moduli_map(const MapArgs& a) {
  conjugate_exponent(a.p);
  const Range xs = parse_range(a.xs);
  const Range ys = parse_range(a.ys);
  const int rows = xs.count * ys.count;
  std::vector<std::string> lines(rows);
  std::vector<std::string> errors(rows);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < rows; ++k) {
    const double x = xs.at(k / ys.count);
    const double y = ys.at(k % ys.count);
    try {
      const ModuliPoint m = ModuliPoint::make(x, y, 1.0);
      std::string t = "unconstrained";
      if (y > 1.0) t = number(tau(y, a.p));
      lines[k] = number(x) + "," + number(y) + "," + std::string(to_string(classify_region(m))) +
                 "," + t;
    } catch (const std::invalid_argument&) {
      // Outside the reduced domain: no row.
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  std::ofstream file;
  if (a.out) {
    file.open(*a.out);
    if (!file) throw std::runtime_error("cannot write " + *a.out);
  }
  std::ostream& out = a.out ? static_cast<std::ostream&>(file) : std::cout;
  out << "x,y,region,tau\n";
  for (const std::string& line : lines) {
    if (!line.empty()) out << line << '\n';
  }
  return kExitCertified;
}

struct GenerateArgs {
  std::string family;
  std::string out;
  double x = 0.0;
  double y = 1.0;
  double scale = 1.0;
  int n = 0;
  double R = 0.1;
  double beta = std::numbers::pi / 6.0;
  double ratio = std::exp(1.0);
  std::optional<double> smoothing;
  std::optional<int> center_i;
  std::optional<int> center_j;
  int modes = 4;
  double amplitude = 0.5;
  std::uint64_t seed = 0;
  double p = 2.0;
};

int cmd_generate(const GenerateArgs& a) {
  const ModuliPoint m = ModuliPoint::make(a.x, a.y, a.scale);
  std::optional<ConformalTorusMetric> metric;
  if (a.family == "random") {
    const int n = a.n > 0 ? a.n : 128;
    const TorusGrid grid(m, n, n);
    metric = generators::random_trig_metric(grid, a.modes, a.amplitude, a.seed);
  } else {
    const int n = a.n > 0 ? a.n : 512;
    const TorusGrid grid(m, n, n);
    const double cell = a.scale * std::min(1.0, std::hypot(a.x, a.y)) / n;
    const double smoothing = a.smoothing.value_or(std::max(a.R / 16.0, 4.0 * cell));
    const int ci = a.center_i.value_or(n / 2);
    const int cj = a.center_j.value_or(n / 2);
    if (!(a.ratio > 0.0)) throw std::invalid_argument("--ratio must be positive");
    if (a.family == "cylinder") {
      metric = generators::generate_cylinder(a.R, a.ratio * a.R, grid, ci, cj, smoothing);
    } else {
      if (!(a.ratio > 1.0)) throw std::invalid_argument("cone needs --ratio R/rho > 1");
      if (!(a.beta > 0.0)) throw std::invalid_argument("cone needs --beta > 0");
      generators::ConeSpec spec;
      spec.R = a.R;
      spec.beta = a.beta;
      spec.H = (a.R - a.R / a.ratio) / std::sin(a.beta);
      spec.smoothing = smoothing;
      spec.grid = grid;
      spec.center_i = ci;
      spec.center_j = cj;
      metric = generators::generate_cone(spec);
    }
  }
  io::write_field_file(a.out, metric->u());
  print(report(*metric, a.p));
  return kExitCertified;
}

struct WillmoreArgs {
  std::optional<std::string> file;
  std::optional<std::string> builtin;
  bool list = false;
  int n = 128;
  double p = 2.0;
};

int cmd_willmore(const WillmoreArgs& a) {
  if (a.list) {
    for (const NamedImmersion& b : builtin_immersions(8)) std::cout << b.name << '\n';
    return kExitCertified;
  }
  std::optional<ImmersedTorus> t;
  if (a.file) {
    t = io::read_immersion_file(*a.file);
  } else if (a.builtin) {
    for (NamedImmersion& b : builtin_immersions(a.n)) {
      if (b.name == *a.builtin) t = std::move(b.torus);
    }
    if (!t) throw std::invalid_argument("unknown built-in immersion '" + *a.builtin + "'");
  } else {
    throw CLI::ValidationError("willmore", "an immersion file, --builtin or --list is required");
  }
  const LowerBoundVerification v = verify_lower_bounds(*t, a.p, a.n);
  print({{"W", v.W},
         {"report", v.report},
         {"certificate", v.certificate},
         {"lower_bounds", v.lower_bounds},
         {"all_hold", v.all_hold}});
  return v.all_hold ? kExitCertified : kExitUncertified;
}

struct ValidateArgs {
  bool quick = false;
  bool full = false;
  std::vector<int> criteria;
};

int cmd_validate(const ValidateArgs& a) {
  const validation::Scale scale = a.full ? validation::Scale::Full : validation::Scale::Quick;
  auto show = [](const validation::CriterionResult& r) {
    std::cout << validation::format_line(r) << std::endl;
  };
  std::vector<validation::CriterionResult> results;
  if (a.criteria.empty()) {
    results = validation::run_all(scale, show);
  } else {
    for (int id : a.criteria) {
      results.push_back(validation::run_criterion(id, scale));
      show(results.back());
    }
  }
  std::string failed;
  for (const auto& r : results) {
    if (!r.passed) failed += " " + std::to_string(r.id);
  }
  print({{"scale", a.full ? "full" : "quick"}, {"passed", failed.empty()}, {"criteria", results}});
  if (!failed.empty()) {
    std::cerr << "failed criteria:" << failed << '\n';
    return kExitError;
  }
  return kExitCertified;
}

}  // namespace

int main(int argc, char** argv) {
  kernels::configure_threads_from_environment();

  CLI::App app{"Certify lower bounds on the Willmore energy of tori from conformal metric data.\n"
               "Thread count: WILLMORE_THREADS."};
  app.require_subcommand(1);

  const CLI::Validator check_p(
      [](std::string& s) -> std::string {
        try {
          if (std::stod(s) > 1.0) return {};
        } catch (const std::exception&) {
        }
        return "p must exceed 1";
      },
      "P>1");

  CertifyArgs certify_args;
  auto* certify_cmd = app.add_subcommand("certify", "Measure a field file and certify W >= 2 pi^2");
  certify_cmd->add_option("file", certify_args.file, "Field file (JSON)")->required();
  certify_cmd->add_option("--p", certify_args.p, "Curvature exponent")->check(check_p);
  certify_cmd->add_option("--stencil-radius", certify_args.stencil_radius,
                          "Systole stencil radius, 0 = automatic")
      ->check(CLI::Range(0, 3));

  BoundArgs bound_args;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate oscillation bounds");
  auto* bound_file = bound_cmd->add_option("--field", bound_args.file, "Field file to measure");
  bound_cmd->add_option("--K", bound_args.K, "Curvature functional value")
      ->check(CLI::NonNegativeNumber)
      ->excludes(bound_file);
  bound_cmd->add_option("--V", bound_args.V, "Systolic ratio area/sys^2")
      ->check(CLI::PositiveNumber)
      ->excludes(bound_file);
  bound_cmd->add_option("--p", bound_args.p, "Curvature exponent")->check(check_p);
  bound_cmd->add_option("--stencil-radius", bound_args.stencil_radius,
                        "Systole stencil radius, 0 = automatic")
      ->check(CLI::Range(0, 3));

  double tau_y = 0.0;
  double tau_p = 2.0;
  auto* tau_cmd = app.add_subcommand("tau", "Main threshold for a flat modulus y");
  tau_cmd->add_option("--y", tau_y, "Modulus y")->required()->check(CLI::PositiveNumber);
  tau_cmd->add_option("--p", tau_p, "Curvature exponent")->check(check_p);

  double sigma_V = 0.0;
  double sigma_p = 2.0;
  auto* sigma_cmd = app.add_subcommand("sigma", "Threshold for a measured systolic ratio V");
  sigma_cmd->add_option("--V", sigma_V, "Systolic ratio")->required()->check(CLI::PositiveNumber);
  sigma_cmd->add_option("--p", sigma_p, "Curvature exponent")->check(check_p);

  MapArgs map_args;
  auto* map_cmd = app.add_subcommand("moduli-map", "CSV of regions and thresholds over the moduli space");
  map_cmd->add_option("--p", map_args.p, "Curvature exponent")->check(check_p);
  map_cmd->add_option("--xs", map_args.xs, "x range LO:HI:COUNT")->capture_default_str();
  map_cmd->add_option("--ys", map_args.ys, "y range LO:HI:COUNT")->capture_default_str();
  map_cmd->add_option("--out", map_args.out, "Output CSV (default stdout)");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a test metric to a field file");
  gen_cmd->add_option("--family", gen.family, "cone, cylinder or random")
      ->required()
      ->check(CLI::IsMember({"cone", "cylinder", "random"}));
  gen_cmd->add_option("--out", gen.out, "Output field file")->required();
  gen_cmd->add_option("--x", gen.x, "Lattice modulus x");
  gen_cmd->add_option("--y", gen.y, "Lattice modulus y");
  gen_cmd->add_option("--scale", gen.scale, "Lattice scale")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Samples per axis (default 512, random 128)")
      ->check(CLI::Range(8, 8192));
  gen_cmd->add_option("--R", gen.R, "Outer radius")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--beta", gen.beta, "Cone opening angle");
  gen_cmd->add_option("--ratio", gen.ratio, "R/rho for a cone, H/R for a cylinder");
  gen_cmd->add_option("--smoothing", gen.smoothing, "Transition width (default max(R/16, 4 cells))")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--center-i", gen.center_i, "Centre node index along the first axis");
  gen_cmd->add_option("--center-j", gen.center_j, "Centre node index along the second axis");
  gen_cmd->add_option("--modes", gen.modes, "Random modes")->check(CLI::Range(1, 24));
  gen_cmd->add_option("--amplitude", gen.amplitude, "Random oscillation")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--p", gen.p, "Curvature exponent for the report")->check(check_p);

  WillmoreArgs will;
  auto* will_cmd = app.add_subcommand("willmore", "Willmore energy of an immersion and its lower bounds");
  auto* will_file = will_cmd->add_option("file", will.file, "Immersion file (JSON)");
  auto* will_builtin = will_cmd->add_option("--builtin", will.builtin, "Built-in immersion name");
  will_cmd->add_flag("--list", will.list, "List built-in immersions");
  will_cmd->add_option("--n", will.n, "Grid resolution")->check(CLI::Range(16, 4096));
  will_cmd->add_option("--p", will.p, "Curvature exponent")->check(check_p);
  will_file->excludes(will_builtin);

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Run the acceptance suite");
  auto* quick = val_cmd->add_flag("--quick", val.quick, "Quick scale (default)");
  auto* full = val_cmd->add_flag("--full", val.full, "Full scale");
  quick->excludes(full);
  val_cmd->add_option("--criterion", val.criteria, "Run only these criteria")
      ->check(CLI::Range(1, validation::kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*certify_cmd) return cmd_certify(certify_args);
    if (*bound_cmd) return cmd_bound(bound_args);
    if (*tau_cmd) return cmd_threshold(true, tau_y, tau_p);
    if (*sigma_cmd) return cmd_threshold(false, sigma_V, sigma_p);
    if (*map_cmd) return cmd_moduli_map(map_args);
    if (*gen_cmd) return cmd_generate(gen);
    if (*will_cmd) return cmd_willmore(will);
    if (*val_cmd) return cmd_validate(val);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
