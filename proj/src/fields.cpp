#include "willmore/fields.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace willmore {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW buffers with RAII cleanup.
template <typename T>
struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  T* data;
};

// Signed label of DFT index m on an axis with n samples. Nyquist maps to +n/2.
int signed_label(int m, int n) { return m <= n / 2 ? m : m - n; }

bool is_nyquist(int m, int n) { return n % 2 == 0 && m == n / 2; }

Vec2 frequency_of(const ModuliPoint& mp, double p, double q) {
  return {q / mp.scale, (p - q * mp.x) / (mp.y * mp.scale)};
}

// Applies a Fourier multiplier M(xi) to a real field. At Nyquist indices the
// mode has two representatives (+n/2 and -n/2); M is averaged over them so
// the result stays real and odd-order derivatives drop the unresolved mode.
template <typename Multiplier>
ScalarField apply_multiplier(const ScalarField& field, Multiplier&& mult) {
  FourierSpectrum spec = dft(field);
  const TorusGrid& g = field.grid();
  const int n1 = g.n1();
  const int n2 = g.n2();
  const int cols = spec.half_cols();
  auto half = spec.half();
  for (int m1 = 0; m1 < n1; ++m1) {
    const int q = signed_label(m1, n1);
    const bool nyq1 = is_nyquist(m1, n1);
    for (int m2 = 0; m2 < cols; ++m2) {
      const int p = signed_label(m2, n2);
      const bool nyq2 = is_nyquist(m2, n2);
      std::complex<double> factor = 0.0;
      int count = 0;
      for (int s1 = 0; s1 < (nyq1 ? 2 : 1); ++s1) {
        for (int s2 = 0; s2 < (nyq2 ? 2 : 1); ++s2) {
          const double qq = s1 ? -q : q;
          const double pp = s2 ? -p : p;
          factor += mult(frequency_of(g.moduli(), pp, qq));
          ++count;
        }
      }
      half[static_cast<std::size_t>(m1) * cols + m2] *= factor / static_cast<double>(count);
    }
  }
  return idft(spec);
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

double laplacian_sign() {
#ifdef WILLMORE_MUTANT_FLIP_LAPLACIAN
  return -1.0;
#else
  return 1.0;
#endif
}

TorusGrid::TorusGrid(ModuliPoint moduli, int n1, int n2) : moduli_(moduli), n1_(n1), n2_(n2) {
  if (n1 < 8 || n2 < 8) throw std::invalid_argument("grid needs at least 8 samples per axis");
}

Vec2 TorusGrid::point(double i, double j) const {
  return (i / n1_) * moduli_.v1() + (j / n2_) * moduli_.v2();
}

Vec2 TorusGrid::wrap(Vec2 d) const {
  const Vec2 a = moduli_.v1();
  const Vec2 b = moduli_.v2();
  const double det = cross(a, b);
  // Lattice coordinates of d, rounded, then the best of the nearby images.
  const double ca = std::round(cross(d, b) / det);
  const double cb = std::round(cross(a, d) / det);
  Vec2 best = d - ca * a - cb * b;
  double best_len = dot(best, best);
  for (int s = -1; s <= 1; ++s) {
    for (int t = -1; t <= 1; ++t) {
      const Vec2 cand = d - (ca + s) * a - (cb + t) * b;
      const double len = dot(cand, cand);
      if (len < best_len) {
        best = cand;
        best_len = len;
      }
    }
  }
  return best;
}

ScalarField::ScalarField(TorusGrid grid) : grid_(grid), samples_(grid.size(), 0.0) {}

ScalarField::ScalarField(TorusGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) {
    throw std::invalid_argument("expected " + std::to_string(grid_.size()) + " samples, got " +
                                std::to_string(samples_.size()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("field samples must be finite");
  }
}

ScalarField ScalarField::sample(const TorusGrid& grid, const std::function<double(Vec2)>& f) {
  std::vector<double> values(grid.size());
  for (int i = 0; i < grid.n1(); ++i) {
    for (int j = 0; j < grid.n2(); ++j) values[grid.index(i, j)] = f(grid.point(i, j));
  }
  return ScalarField(grid, std::move(values));
}

ScalarField ScalarField::constant(const TorusGrid& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

double ScalarField::at(int i, int j) const {
  const int n1 = grid_.n1();
  const int n2 = grid_.n2();
  i %= n1;
  j %= n2;
  if (i < 0) i += n1;
  if (j < 0) j += n2;
  return samples_[grid_.index(i, j)];
}

ScalarField& ScalarField::operator+=(double c) {
  for (double& v : samples_) v += c;
  return *this;
}

FourierSpectrum::FourierSpectrum(TorusGrid grid, std::vector<std::complex<double>> half)
    : grid_(grid), half_(std::move(half)) {
  if (half_.size() != static_cast<std::size_t>(grid_.n1()) * half_cols()) {
    throw std::invalid_argument("half spectrum has the wrong size");
  }
}

std::complex<double> FourierSpectrum::coefficient(int p, int q) const {
  const int n1 = grid_.n1();
  const int n2 = grid_.n2();
  if (2 * std::abs(q) > n1 || 2 * std::abs(p) > n2) {
    throw std::out_of_range("mode (" + std::to_string(p) + ", " + std::to_string(q) +
                            ") is not resolved by the grid");
  }
  int m1 = ((q % n1) + n1) % n1;
  int m2 = ((p % n2) + n2) % n2;
  const int cols = half_cols();
  if (m2 < cols) return half_[static_cast<std::size_t>(m1) * cols + m2];
  m1 = (n1 - m1) % n1;
  m2 = n2 - m2;
  return std::conj(half_[static_cast<std::size_t>(m1) * cols + m2]);
}

CosSinAmplitude FourierSpectrum::amplitude(int p, int q) const {
  const std::complex<double> c = coefficient(p, q);
  const int n1 = grid_.n1();
  const int n2 = grid_.n2();
  const bool self_conjugate = (2 * q) % n1 == 0 && (2 * p) % n2 == 0;
  if (self_conjugate) return {c.real(), 0.0};
  return {2.0 * c.real(), -2.0 * c.imag()};
}

Vec2 FourierSpectrum::frequency(int p, int q) const { return frequency_of(grid_.moduli(), p, q); }

double FourierSpectrum::energy() const {
  const int n1 = grid_.n1();
  const int n2 = grid_.n2();
  const int cols = half_cols();
  double total = 0.0;
  for (int m1 = 0; m1 < n1; ++m1) {
    for (int m2 = 0; m2 < cols; ++m2) {
      const double w = (m2 == 0 || (n2 % 2 == 0 && m2 == n2 / 2)) ? 1.0 : 2.0;
      total += w * std::norm(half_[static_cast<std::size_t>(m1) * cols + m2]);
    }
  }
  return total;
}

double FourierSpectrum::energy_above_half_nyquist() const {
  const int n1 = grid_.n1();
  const int n2 = grid_.n2();
  const int cols = half_cols();
  double total = 0.0;
  for (int m1 = 0; m1 < n1; ++m1) {
    const int q = signed_label(m1, n1);
    for (int m2 = 0; m2 < cols; ++m2) {
      if (4 * std::abs(q) <= n1 && 4 * m2 <= n2) continue;
      const double w = (m2 == 0 || (n2 % 2 == 0 && m2 == n2 / 2)) ? 1.0 : 2.0;
      total += w * std::norm(half_[static_cast<std::size_t>(m1) * cols + m2]);
    }
  }
  return total;
}

FourierSpectrum dft(const ScalarField& field) {
  const TorusGrid& g = field.grid();
  const int n1 = g.n1();
  const int n2 = g.n2();
  const int cols = n2 / 2 + 1;
  const std::size_t n_half = static_cast<std::size_t>(n1) * cols;
  FftwBuffer<double> in(g.size());
  FftwBuffer<fftw_complex> out(n_half);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_2d(n1, n2, in.data, out.data, FFTW_ESTIMATE);
  }
  const auto samples = field.samples();
  std::copy(samples.begin(), samples.end(), in.data);
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double norm = 1.0 / static_cast<double>(g.size());
  std::vector<std::complex<double>> half(n_half);
  for (std::size_t k = 0; k < n_half; ++k) half[k] = {out.data[k][0] * norm, out.data[k][1] * norm};
  return FourierSpectrum(g, std::move(half));
}

ScalarField idft(const FourierSpectrum& spectrum) {
  const TorusGrid& g = spectrum.grid();
  const int n1 = g.n1();
  const int n2 = g.n2();
  const auto half = spectrum.half();
  FftwBuffer<fftw_complex> in(half.size());
  FftwBuffer<double> out(g.size());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_c2r_2d(n1, n2, in.data, out.data, FFTW_ESTIMATE);
  }
  for (std::size_t k = 0; k < half.size(); ++k) {
    in.data[k][0] = half[k].real();
    in.data[k][1] = half[k].imag();
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return ScalarField(g, std::vector<double>(out.data, out.data + g.size()));
}

FourierSpectrum reference_dft(const ScalarField& field) {
  const TorusGrid& g = field.grid();
  const int n1 = g.n1();
  const int n2 = g.n2();
  const int cols = n2 / 2 + 1;
  std::vector<std::complex<double>> tw1(n1), tw2(n2);
  for (int k = 0; k < n1; ++k) tw1[k] = std::polar(1.0, -kTwoPi * k / n1);
  for (int k = 0; k < n2; ++k) tw2[k] = std::polar(1.0, -kTwoPi * k / n2);
  const double norm = 1.0 / static_cast<double>(g.size());
  std::vector<std::complex<double>> half(static_cast<std::size_t>(n1) * cols);
  for (int m1 = 0; m1 < n1; ++m1) {
    for (int m2 = 0; m2 < cols; ++m2) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < n1; ++i) {
        const std::complex<double> row_phase = tw1[(static_cast<long>(m1) * i) % n1];
        std::complex<double> row = 0.0;
        for (int j = 0; j < n2; ++j) row += field(i, j) * tw2[(static_cast<long>(m2) * j) % n2];
        acc += row_phase * row;
      }
      half[static_cast<std::size_t>(m1) * cols + m2] = acc * norm;
    }
  }
  return FourierSpectrum(g, std::move(half));
}

ScalarField laplacian(const ScalarField& field) {
  const double sign = laplacian_sign();
  return apply_multiplier(field, [sign](Vec2 xi) -> std::complex<double> {
    return sign * 4.0 * std::numbers::pi * std::numbers::pi * dot(xi, xi);
  });
}

ScalarField derivative(const ScalarField& field, Axis axis) {
  return apply_multiplier(field, [axis](Vec2 xi) -> std::complex<double> {
    const double c = axis == Axis::W1 ? xi.x : xi.y;
    return {0.0, kTwoPi * c};
  });
}

ScalarField second_derivative(const ScalarField& field, Axis a, Axis b) {
  return apply_multiplier(field, [a, b](Vec2 xi) -> std::complex<double> {
    const double ca = a == Axis::W1 ? xi.x : xi.y;
    const double cb = b == Axis::W1 ? xi.x : xi.y;
    return -kTwoPi * kTwoPi * ca * cb;
  });
}

ScalarField grad_norm(const ScalarField& field) {
  const ScalarField d1 = derivative(field, Axis::W1);
  const ScalarField d2 = derivative(field, Axis::W2);
  std::vector<double> out(field.grid().size());
  const auto a = d1.samples();
  const auto b = d2.samples();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::hypot(a[k], b[k]);
  return ScalarField(field.grid(), std::move(out));
}

double integrate(const ScalarField& field) {
  const TorusGrid& g = field.grid();
  return kernels::weighted_sum(g.extent(), field.samples(), {}) * g.cell_area();
}

double integrate(const ScalarField& field, const ScalarField& weight) {
  require_same_grid(field, weight);
  const TorusGrid& g = field.grid();
  return kernels::weighted_sum(g.extent(), field.samples(), weight.samples()) * g.cell_area();
}

}  // namespace willmore
