#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "willmore/geometry.hpp"

namespace willmore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Step {
  int a;
  int b;
  double length;
};

std::vector<Step> make_stencil(Vec2 d1, Vec2 d2, int radius) {
  std::vector<Step> steps;
  for (int a = -radius; a <= radius; ++a) {
    for (int b = -radius; b <= radius; ++b) {
      if ((a == 0 && b == 0) || std::gcd(a, b) != 1) continue;
      steps.push_back({a, b, norm(a * d1 + b * d2)});
    }
  }
  return steps;
}

// Divisor pair (d1, d2) with n_i / d_i <= max_nodes whose decimated steps are
// closest in length, so the stencil stays nearly isotropic. Ties go to the
// finer graph.
std::pair<int, int> decimation(const TorusGrid& grid, int max_nodes) {
  const double len1 = norm(grid.step1());
  const double len2 = norm(grid.step2());
  std::pair<int, int> best{grid.n1(), grid.n2()};
  double best_skew = kInf;
  for (int a = 1; a <= grid.n1(); ++a) {
    if (grid.n1() % a != 0 || grid.n1() / a > max_nodes) continue;
    for (int b = 1; b <= grid.n2(); ++b) {
      if (grid.n2() % b != 0 || grid.n2() / b > max_nodes) continue;
      const double skew = std::abs(std::log(a * len1 / (b * len2)));
      if (skew < best_skew - 1e-12) {
        best_skew = skew;
        best = {a, b};
      }
    }
  }
  return best;
}

struct SystoleGraph {
  int m1 = 0;
  int m2 = 0;
  std::vector<double> weight;  // e^u at each node
  std::vector<Step> stencil;
  int k_max = 3;
};

struct LoopCandidate {
  double length = kInf;
  int k = 0;
  int l = 0;
  std::size_t basepoint = 0;
};

// Dense scratch space for Dijkstra over the lifted window; reset lazily.
class LiftedWorkspace {
 public:
  void prepare(std::size_t n) {
    if (dist_.size() != n) {
      dist_.assign(n, kInf);
      touched_.clear();
    }
  }
  double& dist(std::size_t v) { return dist_[v]; }
  void touch(std::size_t v) { touched_.push_back(v); }
  void reset() {
    for (std::size_t v : touched_) dist_[v] = kInf;
    touched_.clear();
  }

 private:
  std::vector<double> dist_;
  std::vector<std::size_t> touched_;
};

// Shortest path from basepoint (i0, j0) to any nonzero translate inside the
// lifted window. `bound` prunes paths strictly longer than a value already
// achieved elsewhere; a basepoint whose own optimum is <= bound is computed
// exactly and independently of the bound.
LoopCandidate loop_through(const SystoleGraph& g, int i0, int j0, double bound,
                           LiftedWorkspace& ws) {
  const int span = 2 * g.k_max + 1;
  const int w1 = span * g.m1;
  const int w2 = span * g.m2;
  ws.prepare(static_cast<std::size_t>(w1) * w2);
  const int s1 = i0 + g.k_max * g.m1;
  const int s2 = j0 + g.k_max * g.m2;
  auto lid = [w2](int a, int b) { return static_cast<std::size_t>(a) * w2 + b; };

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const std::size_t start = lid(s1, s2);
  ws.dist(start) = 0.0;
  ws.touch(start);
  heap.push({0.0, start});

  LoopCandidate best;
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > ws.dist(v)) continue;
    if (d >= best.length || d > bound) break;
    const int a = static_cast<int>(v / w2);
    const int b = static_cast<int>(v % w2);
    const int pa = a % g.m1;
    const int pb = b % g.m2;
    if (v != start && pa == i0 && pb == j0) {
      best.length = d;
      best.k = (a - s1) / g.m1;
      best.l = (b - s2) / g.m2;
      break;  // popped in nondecreasing order, so this is the optimum
    }
    const double wv = g.weight[static_cast<std::size_t>(pa) * g.m2 + pb];
    for (const Step& s : g.stencil) {
      const int na = a + s.a;
      const int nb = b + s.b;
      if (na < 0 || nb < 0 || na >= w1 || nb >= w2) continue;
      const int qa = ((na % g.m1) + g.m1) % g.m1;
      const int qb = ((nb % g.m2) + g.m2) % g.m2;
      const double wn = g.weight[static_cast<std::size_t>(qa) * g.m2 + qb];
      const double nd = d + s.length * 0.5 * (wv + wn);
      const std::size_t u = lid(na, nb);
      if (nd < ws.dist(u)) {
        if (ws.dist(u) == kInf) ws.touch(u);
        ws.dist(u) = nd;
        heap.push({nd, u});
      }
    }
  }
  ws.reset();
  return best;
}

struct Basepoint {
  int i;
  int j;
};

// Evaluates all basepoints and returns the best candidate; ties go to the
// lowest index so parallel and serial runs agree.
LoopCandidate best_over(const SystoleGraph& g, const std::vector<Basepoint>& pts,
                        double initial_bound, bool parallel) {
  std::vector<LoopCandidate> results(pts.size());
  double shared_bound = initial_bound;
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
  if (parallel) {
#pragma omp parallel
    {
      LiftedWorkspace ws;
#pragma omp for schedule(dynamic, 1)
      for (std::ptrdiff_t t = 0; t < n; ++t) {
        double bound;
#pragma omp critical(willmore_systole_bound)
        bound = shared_bound;
        const LoopCandidate c = loop_through(g, pts[t].i, pts[t].j, bound, ws);
        results[static_cast<std::size_t>(t)] = c;
#pragma omp critical(willmore_systole_bound)
        shared_bound = std::min(shared_bound, c.length);
      }
    }
  } else {
    LiftedWorkspace ws;
    for (std::ptrdiff_t t = 0; t < n; ++t) {
      const LoopCandidate c = loop_through(g, pts[t].i, pts[t].j, shared_bound, ws);
      results[static_cast<std::size_t>(t)] = c;
      shared_bound = std::min(shared_bound, c.length);
    }
  }
  LoopCandidate best;
  for (std::size_t t = 0; t < results.size(); ++t) {
    if (results[t].length < best.length) {
      best = results[t];
      best.basepoint = t;
    }
  }
  return best;
}

}  // namespace

double stencil_anisotropy(Vec2 d1, Vec2 d2, int radius) {
  if (radius < 1) throw std::invalid_argument("stencil radius must be positive");
  const std::vector<Step> steps = make_stencil(d1, d2, radius);
  std::vector<double> angles;
  angles.reserve(steps.size());
  for (const Step& s : steps) {
    const Vec2 v = s.a * d1 + s.b * d2;
    angles.push_back(std::atan2(v.y, v.x));
  }
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
  for (std::size_t k = 1; k < angles.size(); ++k) gap = std::max(gap, angles[k] - angles[k - 1]);
  return 1.0 / std::cos(gap / 2.0);
}

SystoleResult conformal_systole(const ConformalTorusMetric& metric, const SystoleOptions& options) {
  if (options.k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (options.basepoint_stride < 1) throw std::invalid_argument("basepoint stride must be positive");
  if (options.max_nodes < 8) throw std::invalid_argument("max_nodes must be at least 8");
  if (options.stencil_radius < 0 || options.stencil_radius > 3) {
    throw std::invalid_argument("stencil radius must be in 0..3");
  }
  const TorusGrid& grid = metric.grid();
  const auto [dec1, dec2] = decimation(grid, options.max_nodes);

  SystoleGraph g;
  g.m1 = grid.n1() / dec1;
  g.m2 = grid.n2() / dec2;
  g.k_max = options.k_max;
  const Vec2 d1 = static_cast<double>(dec1) * grid.step1();
  const Vec2 d2 = static_cast<double>(dec2) * grid.step2();

  int radius = options.stencil_radius;
  double anisotropy = 0.0;
  if (radius == 0) {
    for (radius = 1; radius <= 3; ++radius) {
      anisotropy = stencil_anisotropy(d1, d2, radius);
      if (anisotropy * anisotropy - 1.0 <= kTargetTolerance || radius == 3) break;
    }
  } else {
    anisotropy = stencil_anisotropy(d1, d2, radius);
  }
  g.stencil = make_stencil(d1, d2, radius);

  g.weight.resize(static_cast<std::size_t>(g.m1) * g.m2);
  for (int a = 0; a < g.m1; ++a) {
    for (int b = 0; b < g.m2; ++b) {
      g.weight[static_cast<std::size_t>(a) * g.m2 + b] = std::exp(metric.u()(a * dec1, b * dec2));
    }
  }

  // Coarse pass along index row 0 and column 0, then a fine pass around the
  // best coarse basepoint.
  const int stride = options.basepoint_stride;
  std::vector<Basepoint> coarse;
  for (int b = 0; b < g.m2; b += stride) coarse.push_back({0, b});
  for (int a = stride; a < g.m1; a += stride) coarse.push_back({a, 0});
  LoopCandidate best = best_over(g, coarse, kInf, options.parallel);

  std::vector<Basepoint> fine;
  if (stride > 1 && best.length < kInf) {
    const Basepoint bp = coarse[best.basepoint];
    for (int off = -stride + 1; off < stride; ++off) {
      if (off == 0) continue;
      if (bp.i == 0) fine.push_back({0, ((bp.j + off) % g.m2 + g.m2) % g.m2});
      if (bp.j == 0) fine.push_back({((bp.i + off) % g.m1 + g.m1) % g.m1, 0});
    }
  }
  if (stride > 1 && !fine.empty()) {
    const LoopCandidate refined = best_over(g, fine, best.length, options.parallel);
    if (refined.length < best.length) best = refined;
  }

  SystoleResult r;
  r.length = best.length;
  r.k = best.k;
  r.l = best.l;
  r.stencil_radius = radius;
  r.tolerance = anisotropy * anisotropy - 1.0;
  r.nodes1 = g.m1;
  r.nodes2 = g.m2;
  return r;
}

}  // namespace willmore
