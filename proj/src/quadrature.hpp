#pragma once

#include <cmath>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

namespace willmore::detail {

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
  const std::vector<double> positive = boost::math::legendre_p_zeros<double>(n);
  GaussRule rule;
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    if (*it == 0.0) continue;
    rule.nodes.push_back(-*it);
  }
  for (double x : positive) rule.nodes.push_back(x);
  for (double x : rule.nodes) {
    const double d = boost::math::legendre_p_prime(n, x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * d * d));
  }
  return rule;
}

inline const GaussRule& gauss20() {
  static const GaussRule rule = gauss_legendre(20);
  return rule;
}

// int_a^b f using the given rule on one panel.
template <typename F>
double integrate_panel(const GaussRule& rule, F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
  }
  return sum * half;
}

}  // namespace willmore::detail
