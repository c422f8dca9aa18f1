#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cvtele {

using cplx = std::complex<double>;

/// Raised when a Gaussian-envelope quadrature cannot be set up or does not converge.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Associated Laguerre polynomial L_n^{(a)}(x) by the three-term recurrence in n.
double assoc_laguerre(int n, double a, double x);

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
///
/// `scaled_weights` holds w_i * exp(x_i^2), which is what an integrand carrying
/// its own Gaussian decay needs. Nodes are ascending.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

/// Rules are computed once per order and cached; safe to call concurrently.
const GaussHermiteRule& gauss_hermite(int order);

/// Integrates f over R^D, where |f(x)| decays like exp(-x^T Q x) times a slowly
/// varying factor. Q must be symmetric positive definite.
///
/// Uses the substitution x = L^{-T} y with Q = L L^T, after which the envelope is
/// exactly the Gauss-Hermite weight in every coordinate of y.
template <int D, class F>
cplx integrate_with_envelope(F&& f, const Eigen::Matrix<double, D, D>& envelope, int order) {
  using Mat = Eigen::Matrix<double, D, D>;
  using Vec = Eigen::Matrix<double, D, 1>;
  Eigen::LLT<Mat> llt(envelope);
  if (llt.info() != Eigen::Success) {
    throw IntegrationError("integrand envelope is not positive definite; the integrand does not decay");
  }
  const Mat lower = llt.matrixL();
  const Mat map = lower.transpose().inverse();
  const double jacobian = 1.0 / lower.diagonal().prod();

  const GaussHermiteRule& rule = gauss_hermite(order);
  const int q = static_cast<int>(rule.nodes.size());
  std::array<int, D> idx{};
  cplx sum = 0.0;
  while (true) {
    Vec y;
    double w = 1.0;
    for (int d = 0; d < D; ++d) {
      y[d] = rule.nodes[idx[d]];
      w *= rule.scaled_weights[idx[d]];
    }
    const Vec x = map * y;
    sum += w * f(x);

    int d = 0;
    while (d < D && ++idx[d] == q) {
      idx[d] = 0;
      ++d;
    }
    if (d == D) break;
  }
  return sum * jacobian;
}

}  // namespace cvtele
