#include "willmore/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace willmore {

namespace {

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must exceed 1");
}

double scale_invariant_norm(double power_sum, double p, double area_g) {
  return std::pow(power_sum, 1.0 / p) * std::pow(area_g, 1.0 - 1.0 / p);
}

// Union-find over grid nodes that also tracks the lift offset of each node
// relative to its parent, in units of the two lattice generators.
class LiftUnionFind {
 public:
  explicit LiftUnionFind(std::size_t n) : parent_(n), dk_(n, 0), dl_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  // Root of a and offset of a relative to that root.
  std::size_t find(std::size_t a, int& ok, int& ol) {
    ok = 0;
    ol = 0;
    std::size_t r = a;
    while (parent_[r] != r) {
      ok += dk_[r];
      ol += dl_[r];
      r = parent_[r];
    }
    // Path compression with offset fix-up.
    int ck = ok;
    int cl = ol;
    std::size_t c = a;
    while (parent_[c] != r) {
      const std::size_t next = parent_[c];
      const int nk = ck - dk_[c];
      const int nl = cl - dl_[c];
      parent_[c] = r;
      dk_[c] = ck;
      dl_[c] = cl;
      c = next;
      ck = nk;
      cl = nl;
    }
    return r;
  }

  // Records that lift(b) = lift(a) + (k, l). Returns false when a and b are
  // already joined with a different offset, i.e. a noncontractible cycle.
  bool unite(std::size_t a, std::size_t b, int k, int l) {
    int ak, al, bk, bl;
    const std::size_t ra = find(a, ak, al);
    const std::size_t rb = find(b, bk, bl);
    if (ra == rb) return ak + k == bk && al + l == bl;
    // offset(rb relative to ra) = a_off + (k, l) - b_off
    parent_[rb] = ra;
    dk_[rb] = ak + k - bk;
    dl_[rb] = al + l - bl;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> dk_;
  std::vector<int> dl_;
};

}  // namespace

ConformalTorusMetric ConformalTorusMetric::shifted(double c) const {
  ScalarField v = u_;
  v += c;
  return ConformalTorusMetric(std::move(v));
}

ScalarField gaussian_curvature(const ConformalTorusMetric& metric) {
  const ScalarField lap = laplacian(metric.u());
  std::vector<double> k(metric.grid().size());
  kernels::curvature_from_laplacian(metric.u().samples(), lap.samples(), k);
  return ScalarField(metric.grid(), std::move(k));
}

double area(const ConformalTorusMetric& metric) {
  std::vector<double> density(metric.grid().size());
  kernels::area_density(metric.u().samples(), density);
  const TorusGrid& g = metric.grid();
  return kernels::weighted_sum(g.extent(), density, {}) * g.cell_area();
}

CurvatureFunctionals curvature_functionals(const ConformalTorusMetric& metric, double p) {
  require_p(p);
  const ScalarField K = gaussian_curvature(metric);
  const TorusGrid& g = metric.grid();
  const double cell = g.cell_area();
  const double a = area(metric);
  const auto ext = g.extent();
  const auto k = K.samples();
  const auto u = metric.u().samples();
  CurvatureFunctionals out;
  out.K1 = kernels::curvature_power_sum(ext, k, u, 1.0, 0) * cell;
  out.Kp = scale_invariant_norm(kernels::curvature_power_sum(ext, k, u, p, 0) * cell, p, a);
  out.Kp_plus = scale_invariant_norm(kernels::curvature_power_sum(ext, k, u, p, +1) * cell, p, a);
  out.Kp_minus = scale_invariant_norm(kernels::curvature_power_sum(ext, k, u, p, -1) * cell, p, a);
  return out;
}

double oscillation(const ConformalTorusMetric& metric) {
  const auto r = kernels::min_max(metric.u().samples());
  return r.max - r.min;
}

double gauss_bonnet_residual(const ConformalTorusMetric& metric) {
  const ScalarField K = gaussian_curvature(metric);
  std::vector<double> density(metric.grid().size());
  kernels::area_density(metric.u().samples(), density);
  return kernels::weighted_sum(metric.grid().extent(), K.samples(), density) *
         metric.grid().cell_area();
}

bool has_noncontractible_loop(int n1, int n2, std::span<const unsigned char> mask) {
  if (n1 <= 0 || n2 <= 0 || mask.size() != static_cast<std::size_t>(n1) * n2) {
    throw std::invalid_argument("mask does not match grid dimensions");
  }
  LiftUnionFind uf(mask.size());
  auto id = [n2](int i, int j) { return static_cast<std::size_t>(i) * n2 + j; };
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (!mask[id(i, j)]) continue;
      // Neighbour below in i, wrapping across the seam shifts the lift by v1.
      const int ib = (i + 1) % n1;
      if (mask[id(ib, j)] && !uf.unite(id(i, j), id(ib, j), i + 1 == n1 ? 1 : 0, 0)) return true;
      const int jb = (j + 1) % n2;
      if (mask[id(i, jb)] && !uf.unite(id(i, j), id(i, jb), 0, j + 1 == n2 ? 1 : 0)) return true;
    }
  }
  return false;
}

LevelBand level_band(const ConformalTorusMetric& metric) {
  const TorusGrid& g = metric.grid();
  const auto u = metric.u().samples();
  std::vector<double> values(u.begin(), u.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<unsigned char> mask(u.size());

  auto sub_has_loop = [&](double v) {
    for (std::size_t k = 0; k < u.size(); ++k) mask[k] = u[k] <= v;
    return has_noncontractible_loop(g.n1(), g.n2(), mask);
  };
  auto super_has_loop = [&](double v) {
    for (std::size_t k = 0; k < u.size(); ++k) mask[k] = u[k] >= v;
    return has_noncontractible_loop(g.n1(), g.n2(), mask);
  };

  // {u <= max} is everything, so the search always succeeds; likewise {u >= min}.
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (sub_has_loop(values[mid])) hi = mid; else lo = mid + 1;
  }
  LevelBand band;
  band.v1 = values[lo];

  lo = 0;
  hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (super_has_loop(values[mid])) lo = mid; else hi = mid - 1;
  }
  band.v2 = values[lo];
  return band;
}

GeometryReport report(const ConformalTorusMetric& metric, double p,
                      const SystoleOptions& options) {
  require_p(p);
  const ModuliPoint& m = metric.moduli();
  GeometryReport r;
  r.x = m.x;
  r.y = m.y;
  r.p = p;
  r.area_g = area(metric);
  r.area_g0 = metric.grid().area();
  const SystoleResult sys = conformal_systole(metric, options);
  r.sys_g = sys.length;
  r.tol_sys = sys.tolerance;
  r.sys_g0 = flat_systole(m);
  r.V_g = r.area_g / (r.sys_g * r.sys_g);
  r.V_g0 = flat_V(m);
  r.osc_u = oscillation(metric);
  const CurvatureFunctionals f = curvature_functionals(metric, p);
  r.K1 = f.K1;
  r.Kp = f.Kp;
  r.Kp_plus = f.Kp_plus;
  r.Kp_minus = f.Kp_minus;

  r.gauss_bonnet_residual = gauss_bonnet_residual(metric);
  return r;
}

void to_json(nlohmann::json& j, const GeometryReport& r) {
  j = nlohmann::json{{"x", r.x},
                     {"y", r.y},
                     {"area_g", r.area_g},
                     {"area_g0", r.area_g0},
                     {"sys_g", r.sys_g},
                     {"sys_g0", r.sys_g0},
                     {"V_g", r.V_g},
                     {"V_g0", r.V_g0},
                     {"osc_u", r.osc_u},
                     {"K1", r.K1},
                     {"Kp", r.Kp},
                     {"Kp_plus", r.Kp_plus},
                     {"Kp_minus", r.Kp_minus},
                     {"p", r.p},
                     {"gauss_bonnet_residual", r.gauss_bonnet_residual},
                     {"tol_sys", r.tol_sys}};
}

}  // namespace willmore
