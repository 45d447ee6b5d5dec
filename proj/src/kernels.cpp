#include "willmore/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace willmore::kernels {

namespace {

struct Neumaier {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

double row_weighted(const double* values, const double* weights, std::size_t n) {
  Neumaier acc;
  if (weights) {
    for (std::size_t k = 0; k < n; ++k) acc.add(values[k] * weights[k]);
  } else {
    for (std::size_t k = 0; k < n; ++k) acc.add(values[k]);
  }
  return acc.value();
}

double row_power(const double* curvature, const double* u, std::size_t n, double p, int sign) {
  Neumaier acc;
  for (std::size_t k = 0; k < n; ++k) {
    const double kv = curvature[k];
    double mag = 0.0;
    if (sign > 0) {
      mag = std::max(kv, 0.0);
    } else if (sign < 0) {
      mag = std::max(-kv, 0.0);
    } else {
      mag = std::abs(kv);
    }
    if (mag == 0.0) continue;
    acc.add(std::pow(mag, p) * std::exp(2.0 * u[k]));
  }
  return acc.value();
}

double sum_rows(const std::vector<double>& rows) {
  Neumaier acc;
  for (double r : rows) acc.add(r);
  return acc.value();
}

}  // namespace

double compensated_sum(std::span<const double> values) {
  return row_weighted(values.data(), nullptr, values.size());
}

double weighted_sum(Extent extent, std::span<const double> values,
                    std::span<const double> weights) {
  const double* w = weights.empty() ? nullptr : weights.data();
  std::vector<double> rows(extent.rows);
  const auto n_rows = static_cast<std::ptrdiff_t>(extent.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
    const std::size_t off = static_cast<std::size_t>(i) * extent.cols;
    rows[static_cast<std::size_t>(i)] =
        row_weighted(values.data() + off, w ? w + off : nullptr, extent.cols);
  }
  return sum_rows(rows);
}

void curvature_from_laplacian(std::span<const double> u, std::span<const double> lap,
                              std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = std::exp(-2.0 * u[k]) * lap[k];
}

void area_density(std::span<const double> u, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = std::exp(2.0 * u[k]);
}

double curvature_power_sum(Extent extent, std::span<const double> curvature,
                           std::span<const double> u, double p, int sign) {
  std::vector<double> rows(extent.rows);
  const auto n_rows = static_cast<std::ptrdiff_t>(extent.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
    const std::size_t off = static_cast<std::size_t>(i) * extent.cols;
    rows[static_cast<std::size_t>(i)] =
        row_power(curvature.data() + off, u.data() + off, extent.cols, p, sign);
  }
  return sum_rows(rows);
}

Range min_max(std::span<const double> values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for reduction(min : lo) reduction(max : hi) schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    lo = std::min(lo, values[k]);
    hi = std::max(hi, values[k]);
  }
  return {lo, hi};
}

namespace serial {

double weighted_sum(Extent extent, std::span<const double> values,
                    std::span<const double> weights) {
  const double* w = weights.empty() ? nullptr : weights.data();
  std::vector<double> rows(extent.rows);
  for (std::size_t i = 0; i < extent.rows; ++i) {
    const std::size_t off = i * extent.cols;
    rows[i] = row_weighted(values.data() + off, w ? w + off : nullptr, extent.cols);
  }
  return sum_rows(rows);
}

void curvature_from_laplacian(std::span<const double> u, std::span<const double> lap,
                              std::span<double> out) {
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::exp(-2.0 * u[k]) * lap[k];
}

void area_density(std::span<const double> u, std::span<double> out) {
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::exp(2.0 * u[k]);
}

double curvature_power_sum(Extent extent, std::span<const double> curvature,
                           std::span<const double> u, double p, int sign) {
  std::vector<double> rows(extent.rows);
  for (std::size_t i = 0; i < extent.rows; ++i) {
    const std::size_t off = i * extent.cols;
    rows[i] = row_power(curvature.data() + off, u.data() + off, extent.cols, p, sign);
  }
  return sum_rows(rows);
}

Range min_max(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

}  // namespace serial

int thread_count() { return omp_get_max_threads(); }

void configure_threads_from_environment() {
  if (const char* env = std::getenv("WILLMORE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // ignore malformed values; OpenMP defaults stay in effect
    }
  }
}

}  // namespace willmore::kernels
