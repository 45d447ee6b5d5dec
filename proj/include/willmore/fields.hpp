#pragma once

// Periodic scalar fields on a lattice torus and their spectral calculus.
//
// Sample (i, j) of an n1 x n2 grid sits at
//
//     w(i, j) = (i / n1) * scale * (1, 0) + (j / n2) * scale * (x, y),
//
// and samples are stored row-major with j varying fastest. The Fourier mode
// with integer labels (p, q) is exp(2 pi i <xi_pq, w>) with
//
//     xi_pq = (q, (p - q x) / y) / scale,
//
// i.e. q counts oscillations along the first generator and p along the
// second. Laplacians use the geometers' sign: Delta = -div grad, so
// Delta exp(2 pi i <xi, w>) = +4 pi^2 |xi|^2 exp(2 pi i <xi, w>).

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "willmore/kernels.hpp"
#include "willmore/moduli.hpp"

namespace willmore {

/// Sign applied to the spectral Laplacian multiplier; +1 gives the
/// nonnegative-spectrum convention used throughout.
double laplacian_sign();

class TorusGrid {
 public:
  TorusGrid(ModuliPoint moduli, int n1, int n2);

  const ModuliPoint& moduli() const { return moduli_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  std::size_t size() const { return static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n2_) + static_cast<std::size_t>(j);
  }
  kernels::Extent extent() const {
    return {static_cast<std::size_t>(n1_), static_cast<std::size_t>(n2_)};
  }

  /// Flat position of sample (i, j); indices are not wrapped.
  Vec2 point(double i, double j) const;
  /// Flat displacement of one index step along each grid axis.
  Vec2 step1() const { return (1.0 / n1_) * moduli_.v1(); }
  Vec2 step2() const { return (1.0 / n2_) * moduli_.v2(); }

  double area() const { return moduli_.scale * moduli_.scale * moduli_.y; }
  double cell_area() const { return area() / static_cast<double>(size()); }

  /// Shortest flat displacement between two points modulo the lattice.
  Vec2 wrap(Vec2 d) const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  ModuliPoint moduli_;
  int n1_;
  int n2_;
};

class ScalarField {
 public:
  explicit ScalarField(TorusGrid grid);
  ScalarField(TorusGrid grid, std::vector<double> samples);

  /// Samples f(w) at every grid point.
  static ScalarField sample(const TorusGrid& grid, const std::function<double(Vec2)>& f);
  static ScalarField constant(const TorusGrid& grid, double value);

  const TorusGrid& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  std::span<double> samples() { return samples_; }

  /// Periodic access; indices wrap.
  double at(int i, int j) const;
  double& operator()(int i, int j) { return samples_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return samples_[grid_.index(i, j)]; }

  ScalarField& operator+=(double c);

 private:
  TorusGrid grid_;
  std::vector<double> samples_;
};

/// Plain cosine/sine amplitudes of the real pair of modes +-(p, q):
/// a cos(2 pi <xi, w>) + b sin(2 pi <xi, w>).
struct CosSinAmplitude {
  double cos = 0.0;
  double sin = 0.0;
};

/// Discrete Fourier coefficients of a real field, normalized so that the
/// (0,0) coefficient is the mean and sum |c|^2 is the mean of the squares.
/// Only the half spectrum is stored; the rest follows from c(-m) = conj c(m).
class FourierSpectrum {
 public:
  FourierSpectrum(TorusGrid grid, std::vector<std::complex<double>> half);

  const TorusGrid& grid() const { return grid_; }

  std::complex<double> coefficient(int p, int q) const;
  CosSinAmplitude amplitude(int p, int q) const;
  /// xi_pq for the given labels.
  Vec2 frequency(int p, int q) const;

  /// sum over all (p, q) of |c_pq|^2.
  double energy() const;
  /// Energy carried by modes with |q| > n1/4 or |p| > n2/4.
  double energy_above_half_nyquist() const;

  /// Raw half-spectrum access: row m1 in [0, n1), column m2 in [0, n2/2].
  std::span<const std::complex<double>> half() const { return half_; }
  std::span<std::complex<double>> half() { return half_; }
  int half_cols() const { return grid_.n2() / 2 + 1; }

 private:
  TorusGrid grid_;
  std::vector<std::complex<double>> half_;
};

FourierSpectrum dft(const ScalarField& field);
ScalarField idft(const FourierSpectrum& spectrum);

/// Reference O(N^2) transform, kept for testing the FFT path.
FourierSpectrum reference_dft(const ScalarField& field);

/// Flat Laplacian, multiplier +4 pi^2 |xi|^2.
ScalarField laplacian(const ScalarField& field);

enum class Axis { W1, W2 };

/// Spectral partial derivative along a Cartesian axis of the flat plane.
ScalarField derivative(const ScalarField& field, Axis axis);
/// Spectral second derivative d^2 / (dw_a dw_b).
ScalarField second_derivative(const ScalarField& field, Axis a, Axis b);

/// Pointwise flat gradient norm |grad u|_{g0}.
ScalarField grad_norm(const ScalarField& field);

/// sum samples * weight * cell area. Throws std::invalid_argument when the
/// weight lives on a different grid.
double integrate(const ScalarField& field);
double integrate(const ScalarField& field, const ScalarField& weight);

}  // namespace willmore
