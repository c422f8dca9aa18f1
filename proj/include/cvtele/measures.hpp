#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cvtele/fock.hpp"
#include "cvtele/states.hpp"

namespace cvtele {

/// Gaussian state fixed by first and second moments of R = (x1, p1, x2, p2),
/// x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2). Vacuum covariance is I/2.
struct GaussianRef {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = 0.5 * Eigen::Matrix4d::Identity();
  /// Outer-shell mass of the Fock state the moments came from (0 if not from Fock data).
  double tail_mass = 0.0;

  /// Tr[rho_G^2] = 1 / (4 sqrt(det cov)).
  double purity() const;

  /// Smallest eigenvalue of cov + i Omega / 2; nonnegative for a physical state.
  double uncertainty_margin() const;
  bool physical(double tol = 1e-10) const { return uncertainty_margin() >= -tol; }

  /// chi_G(a1, a2) = exp(i k.mean - k^T cov k / 2), k = sqrt2 (Im a1, -Re a1, Im a2, -Re a2).
  CharFn2 chi() const;
};

/// First and second moments of a pure truncated state. The ladder operators act
/// on a zero-padded copy one shell larger, so the only truncation error is the
/// state's own.
GaussianRef moments_from_fock(const TwoModeFockState& state);

struct NonGaussianityOptions {
  int order = 16;
  int order_step = 8;
  int max_order = 48;
  /// Successive orders must agree on every trace to this absolute level.
  double tol = 1e-7;
};

struct NonGaussianityResult {
  double value = 0.0;
  double trace_rho2 = 1.0;
  double trace_rhoG2 = 1.0;
  double trace_rho_rhoG = 1.0;
  /// (order, Tr[rho rho_G]) for every order tried.
  std::vector<std::pair<int, double>> refinement;
};

/// Tr[rho1 rho2] = (1/pi^2) int d^4 a chi1(a) chi2(-a), 4D Gauss-Hermite.
double trace_product(const CharFn2& chi1, const CharFn2& chi2, int order);

/// d_nG = (Tr rho^2 + Tr rho_G^2 - 2 Tr[rho rho_G]) / (2 Tr rho^2).
///
/// Tr rho^2 is taken as 1 when `pure` is set and integrated otherwise. Orders
/// are increased until successive values agree; IntegrationError carries the
/// refinement trace otherwise.
NonGaussianityResult non_gaussianity(const CharFn2& chi, const GaussianRef& ref, bool pure,
                                     const NonGaussianityOptions& opts = {});

struct AffinityResult {
  double value = 0.0;
  double xi_star = 0.0;
  /// Upper bound on |G error| from mass missing past the cutoff.
  double truncation_bound = 0.0;
};

/// G(xi) = |<-xi|psi>|^2 with |-xi> = S(-xi)|0,0> = sech(xi) sum_k tanh(xi)^k |k,k>.
double sv_overlap(const TwoModeFockState& state, double xi);

/// max over xi in [0, xi_hi] of sv_overlap: golden section on `brackets` equal
/// sub-intervals, best one kept. Throws TruncationError if the cutoff bound
/// exceeds 1e-6.
AffinityResult sv_affinity(const TwoModeFockState& state, double xi_hi, int brackets = 8);

}  // namespace cvtele
