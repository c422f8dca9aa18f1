#pragma once

// Independent numerical references shared by the unit and acceptance tests.

#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "cvtele/fock.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// <m|D(alpha)|n> for m, n <= cutoff: dense exp(alpha a^dag - conj(alpha) a) on a
/// padded space, top-left block kept.
inline Eigen::MatrixXcd displacement_matrix(cplx alpha, int cutoff, int padded) {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(padded + 1, padded + 1);
  for (int k = 0; k < padded; ++k) {
    const double s = std::sqrt(k + 1.0);
    g(k + 1, k) = alpha * s;
    g(k, k + 1) = -std::conj(alpha) * s;
  }
  return g.exp().topLeftCorner(cutoff + 1, cutoff + 1);
}

/// <psi| D1(a1) D2(a2) |psi> on the truncated space: tr(Psi^H D1 Psi D2^T).
inline cplx chi_from_fock(const cvtele::TwoModeFockState& psi, cplx a1, cplx a2, int padded) {
  const int n = psi.cutoff();
  const Eigen::MatrixXcd d1 = displacement_matrix(a1, n, padded);
  const Eigen::MatrixXcd d2 = displacement_matrix(a2, n, padded);
  const Eigen::MatrixXcd& p = psi.amps();
  return p.conjugate().cwiseProduct(d1 * p * d2.transpose()).sum();
}

}  // namespace oracle
