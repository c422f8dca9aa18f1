#include "cvtele/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cvtele/special.hpp"

namespace cvtele {

namespace {

// k = K x for x = (Re a1, Im a1, Re a2, Im a2).
Eigen::Matrix4d wave_vector_map() {
  const double s = std::numbers::sqrt2;
  Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
  k(0, 1) = s;
  k(1, 0) = -s;
  k(2, 3) = s;
  k(3, 2) = -s;
  return k;
}

cplx inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.conjugate().cwiseProduct(b).sum();
}

}  // namespace

double GaussianRef::purity() const { return 1.0 / (4.0 * std::sqrt(cov.determinant())); }

double GaussianRef::uncertainty_margin() const {
  // H = cov + i Omega/2 as the real 8x8 form [[cov, -Omega/2], [Omega/2, cov]];
  // its spectrum is that of H with each eigenvalue doubled.
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 0.5;
  omega(1, 0) = omega(3, 2) = -0.5;
  Eigen::Matrix<double, 8, 8> h;
  h << cov, -omega, omega, cov;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 8, 8>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CharFn2 GaussianRef::chi() const {
  const Eigen::Matrix4d k = wave_vector_map();
  const Eigen::Matrix4d quad = 0.5 * k.transpose() * cov * k;
  const Eigen::Vector4d lin = k.transpose() * mean;
  return CharFn2(
      [quad, lin](cplx a1, cplx a2) {
        const Eigen::Vector4d x(a1.real(), a1.imag(), a2.real(), a2.imag());
        return std::exp(cplx(-x.dot(quad * x), lin.dot(x)));
      },
      quad, purity() > 1.0 - 1e-12);
}

GaussianRef moments_from_fock(const TwoModeFockState& state) {
  const int n = state.cutoff() + 2;
  const Eigen::MatrixXcd b = state.embedded(n - 1).amps();
  Eigen::MatrixXcd low = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 0; m + 1 < n; ++m) low(m, m + 1) = std::sqrt(m + 1.0);
  const Eigen::MatrixXcd up = low.transpose();
  const double r2 = std::numbers::sqrt2;
  const cplx i(0.0, 1.0);
  const Eigen::MatrixXcd xop = (low + up) / r2;
  const Eigen::MatrixXcd pop = (low - up) / (i * r2);

  // Mode 1 acts on the row index, mode 2 on the column index.
  const std::array<Eigen::MatrixXcd, 4> applied{xop * b, pop * b, b * xop.transpose(),
                                                b * pop.transpose()};
  GaussianRef g;
  g.tail_mass = state.tail_mass();
  const double norm2 = state.norm2();
  for (int j = 0; j < 4; ++j) g.mean[j] = std::real(inner(b, applied[j])) / norm2;
  for (int j = 0; j < 4; ++j) {
    for (int k = j; k < 4; ++k) {
      const double second = std::real(inner(applied[j], applied[k])) / norm2;
      g.cov(j, k) = g.cov(k, j) = second - g.mean[j] * g.mean[k];
    }
  }
  return g;
}

double trace_product(const CharFn2& chi1, const CharFn2& chi2, int order) {
  const Eigen::Matrix4d env = chi1.envelope() + chi2.envelope();
  const cplx v = integrate_with_envelope<4>(
      [&](const Eigen::Vector4d& x) { return chi1(x) * chi2(Eigen::Vector4d(-x)); }, env, order);
  return std::real(v) / (std::numbers::pi * std::numbers::pi);
}

NonGaussianityResult non_gaussianity(const CharFn2& chi, const GaussianRef& ref, bool pure,
                                     const NonGaussianityOptions& opts) {
  const CharFn2 chi_g = ref.chi();
  NonGaussianityResult out;
  out.trace_rhoG2 = ref.purity();

  double prev_cross = 0.0;
  double prev_rho2 = 0.0;
  bool converged = false;
  for (int q = opts.order; q <= opts.max_order; q += opts.order_step) {
    const double cross = trace_product(chi, chi_g, q);
    const double rho2 = pure ? 1.0 : trace_product(chi, chi, q);
    out.refinement.emplace_back(q, cross);
    if (q > opts.order && std::abs(cross - prev_cross) <= opts.tol &&
        std::abs(rho2 - prev_rho2) <= opts.tol) {
      out.trace_rho_rhoG = cross;
      out.trace_rho2 = rho2;
      converged = true;
      break;
    }
    prev_cross = cross;
    prev_rho2 = rho2;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "non-Gaussianity quadrature did not converge; Tr[rho rho_G] by order:";
    for (const auto& [q, v] : out.refinement) msg << " " << q << ":" << v;
    throw IntegrationError(msg.str());
  }
  out.value = (out.trace_rho2 + out.trace_rhoG2 - 2.0 * out.trace_rho_rhoG) / (2.0 * out.trace_rho2);
  return out;
}

double sv_overlap(const TwoModeFockState& state, double xi) {
  const double t = std::tanh(xi);
  double c = 1.0 / std::cosh(xi);
  cplx ov = 0.0;
  for (int k = 0; k <= state.cutoff(); ++k) {
    ov += c * state(k, k);
    c *= t;
  }
  return std::norm(ov);
}

AffinityResult sv_affinity(const TwoModeFockState& state, double xi_hi, int brackets) {
  if (!(xi_hi > 0.0) || brackets < 1) throw std::invalid_argument("sv_affinity: need xi_hi > 0");
  auto f = [&](double xi) { return sv_overlap(state, xi); };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  AffinityResult best;
  best.value = -1.0;
  const double width = xi_hi / brackets;
  for (int b = 0; b < brackets; ++b) {
    double lo = b * width;
    double hi = lo + width;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-10) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = f(x1);
      }
    }
    for (double x : {lo, 0.5 * (lo + hi), hi}) {
      const double v = f(x);
      if (v > best.value) {
        best.value = v;
        best.xi_star = x;
      }
    }
  }

  // Mass of the true state past the cutoff pairs with the reference's own tail.
  const double lost = std::max(0.0, 1.0 - state.norm2());
  const double ref_tail = std::pow(std::tanh(best.xi_star), 2.0 * (state.cutoff() + 1));
  const double amp_err = std::sqrt(lost * ref_tail);
  best.truncation_bound = 2.0 * std::sqrt(best.value) * amp_err + amp_err * amp_err;
  if (best.truncation_bound > 1e-6) {
    std::ostringstream msg;
    msg << "sv_affinity: cutoff " << state.cutoff() << " too small at xi = " << best.xi_star
        << " (error bound " << best.truncation_bound << ")";
    throw TruncationError(msg.str(), lost);
  }
  return best;
}

}  // namespace cvtele
