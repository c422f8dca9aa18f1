#include "cvtele/special.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace cvtele {

double assoc_laguerre(int n, double a, double x) {
  if (n < 0) throw std::invalid_argument("assoc_laguerre: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Newton iteration on the orthonormal Hermite recurrence, symmetric roots
// found from the largest inward.
GaussHermiteRule compute_rule(int n) {
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 100;
  const double pim4 = std::pow(std::numbers::pi, -0.25);

  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    int it = 0;
    for (; it < kMaxIter; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kEps * std::max(1.0, std::abs(z))) break;
    }
    if (it == kMaxIter) throw IntegrationError("gauss_hermite: Newton iteration did not converge");
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  // x was filled descending; store ascending.
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = x[n - 1 - i];
    rule.weights[i] = w[n - 1 - i];
    rule.scaled_weights[i] = std::exp(std::log(rule.weights[i]) + rule.nodes[i] * rule.nodes[i]);
  }
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(compute_rule(order));
  return *slot;
}

}  // namespace cvtele
