#pragma once

// Data-parallel inner loops shared by the field and geometry code.
//
// Each kernel exists twice: an OpenMP version used by the library and a
// plain serial version kept as the reference for tests and benchmarks.
// Reductions accumulate one compensated partial sum per row and then add
// the row sums in index order, so the parallel result is bit-identical to
// the serial one for any thread count.

#include <cstddef>
#include <span>

namespace willmore::kernels {

/// Row-major 2D extent of a sampled field.
struct Extent {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t size() const { return rows * cols; }
};

/// Neumaier-compensated sum of a contiguous range.
double compensated_sum(std::span<const double> values);

/// sum_k values[k] * weights[k] (weights may be empty, meaning all ones).
double weighted_sum(Extent extent, std::span<const double> values,
                    std::span<const double> weights);

/// out[k] = exp(-2 u[k]) * lap[k]: curvature of e^{2u} g0 from the flat
/// Laplacian of u.
void curvature_from_laplacian(std::span<const double> u, std::span<const double> lap,
                              std::span<double> out);

/// out[k] = exp(2 u[k]).
void area_density(std::span<const double> u, std::span<double> out);

/// sum_k |K[k]|^p * exp(2 u[k]) over the positive part (sign > 0), the
/// negative part (sign < 0) or everything (sign == 0).
double curvature_power_sum(Extent extent, std::span<const double> curvature,
                           std::span<const double> u, double p, int sign);

/// (min, max) over all samples.
struct Range {
  double min = 0.0;
  double max = 0.0;
};
Range min_max(std::span<const double> values);

namespace serial {

double weighted_sum(Extent extent, std::span<const double> values,
                    std::span<const double> weights);
void curvature_from_laplacian(std::span<const double> u, std::span<const double> lap,
                              std::span<double> out);
void area_density(std::span<const double> u, std::span<double> out);
double curvature_power_sum(Extent extent, std::span<const double> curvature,
                           std::span<const double> u, double p, int sign);
Range min_max(std::span<const double> values);

}  // namespace serial

/// Number of worker threads the parallel kernels use.
int thread_count();

/// Applies the WILLMORE_THREADS environment variable, if set.
void configure_threads_from_environment();

}  // namespace willmore::kernels
