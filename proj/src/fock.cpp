#include "cvtele/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace cvtele {

TwoModeFockState::TwoModeFockState(Eigen::MatrixXcd amps) : amps_(std::move(amps)) {
  if (amps_.rows() == 0 || amps_.rows() != amps_.cols()) {
    throw std::invalid_argument("TwoModeFockState: amplitude matrix must be square and nonempty");
  }
}

TwoModeFockState TwoModeFockState::vacuum(int cutoff) { return basis(0, 0, cutoff); }

TwoModeFockState TwoModeFockState::basis(int m, int n, int cutoff) {
  if (cutoff < 0 || m < 0 || n < 0 || m > cutoff || n > cutoff) {
    throw std::invalid_argument("TwoModeFockState::basis: index outside cutoff");
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  a(m, n) = 1.0;
  return TwoModeFockState(std::move(a));
}

double TwoModeFockState::tail_mass() const {
  const int n = cutoff();
  double mass = amps_.row(n).squaredNorm() + amps_.col(n).squaredNorm();
  return mass - std::norm(amps_(n, n));
}

TwoModeFockState TwoModeFockState::embedded(int cutoff) const {
  if (cutoff < this->cutoff()) throw std::invalid_argument("embedded: cutoff would shrink the state");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  a.topLeftCorner(amps_.rows(), amps_.cols()) = amps_;
  return TwoModeFockState(std::move(a));
}

TwoModeFockState TwoModeFockState::scaled(cplx factor) const {
  return TwoModeFockState(amps_ * factor);
}

TwoModeFockState apply_two_mode_squeeze(const TwoModeFockState& psi, SqueezeParam zeta,
                                        int out_cutoff) {
  const int nin = psi.cutoff();
  if (out_cutoff < nin) throw std::invalid_argument("apply_two_mode_squeeze: output cutoff below input");
  const double t = std::tanh(zeta.r);
  const double sech = 1.0 / std::cosh(zeta.r);
  const cplx lower_step = std::polar(t, -zeta.phi);  // coefficient of a1 a2
  const cplx raise_step = -std::polar(t, zeta.phi);  // coefficient of a1^dag a2^dag

  // exp(lower_step a1 a2)
  Eigen::MatrixXcd lowered = Eigen::MatrixXcd::Zero(nin + 1, nin + 1);
  for (int m = 0; m <= nin; ++m) {
    for (int n = 0; n <= nin; ++n) {
      const cplx a = psi(m, n);
      if (a == 0.0) continue;
      cplx c = a;
      for (int k = 0; k <= std::min(m, n); ++k) {
        lowered(m - k, n - k) += c;
        c *= lower_step / (k + 1.0) * std::sqrt(static_cast<double>(m - k) * (n - k));
      }
    }
  }

  // sech(r)^{n1 + n2 + 1}
  for (int m = 0; m <= nin; ++m) {
    for (int n = 0; n <= nin; ++n) lowered(m, n) *= std::pow(sech, m + n + 1);
  }

  // exp(raise_step a1^dag a2^dag), truncated at out_cutoff
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_cutoff + 1, out_cutoff + 1);
  for (int m = 0; m <= nin; ++m) {
    for (int n = 0; n <= nin; ++n) {
      cplx c = lowered(m, n);
      if (c == 0.0) continue;
      for (int k = 0; m + k <= out_cutoff && n + k <= out_cutoff; ++k) {
        out(m + k, n + k) += c;
        c *= raise_step / (k + 1.0) * std::sqrt((m + k + 1.0) * (n + k + 1.0));
      }
    }
  }
  return TwoModeFockState(std::move(out));
}

namespace {

void check_loss(double lost, double tolerance, int cutoff) {
  if (lost > tolerance) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " loses probability mass " << lost << " (tolerance " << tolerance
        << ")";
    throw TruncationError(msg.str(), lost);
  }
}

TwoModeFockState build_unchecked(const ResourceSpec& spec, int cutoff) {
  spec.validate();
  if (!spec.pure()) {
    throw UnsupportedError(
        "thermal-dressed resources are mixed; use the characteristic-function path");
  }
  Eigen::MatrixXcd pre = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  if (spec.family == Family::SqueezedCat) {
    const Eigen::VectorXcd g = coherent_amplitudes(spec.gamma, cutoff);
    pre = std::polar(std::sin(spec.delta), spec.theta) * (g * g.transpose());
    pre(0, 0) += std::cos(spec.delta);
    pre /= std::sqrt(spec.cat_norm_squared());
  } else {
    const auto c = spec.fock_coefficients();
    if (static_cast<int>(c.size()) - 1 > cutoff) {
      throw std::invalid_argument("build_resource_fock: cutoff below the superposition's photon number");
    }
    for (std::size_t k = 0; k < c.size(); ++k) pre(k, k) = c[k];
  }
  return apply_two_mode_squeeze(TwoModeFockState(std::move(pre)), spec.squeeze, cutoff);
}

}  // namespace

TwoModeFockState squeezed_fock_pair(SqueezeParam zeta, int n, int cutoff, double tail_tolerance) {
  if (n < 0 || n > cutoff) throw std::invalid_argument("squeezed_fock_pair: need 0 <= n <= cutoff");
  if (!std::isfinite(zeta.r)) throw std::invalid_argument("squeezed_fock_pair: r must be finite");
  auto out = apply_two_mode_squeeze(TwoModeFockState::basis(n, n, cutoff), zeta, cutoff);
  check_loss(1.0 - out.norm2(), tail_tolerance, cutoff);
  return out;
}

TwoModeFockState build_resource_fock(const ResourceSpec& spec, int cutoff, double tail_tolerance) {
  auto out = build_unchecked(spec, cutoff);
  check_loss(1.0 - out.norm2(), tail_tolerance, cutoff);
  return out;
}

TwoModeFockState build_resource_fock_adaptive(const ResourceSpec& spec, double tail_tolerance,
                                              int start_cutoff, int max_cutoff) {
  int cutoff = std::max(start_cutoff, 2);
  while (true) {
    auto out = build_unchecked(spec, cutoff);
    const double lost = 1.0 - out.norm2();
    if (lost <= tail_tolerance && out.tail_mass() <= tail_tolerance) return out;
    if (cutoff * 2 > max_cutoff) check_loss(std::max(lost, out.tail_mass()), tail_tolerance, cutoff);
    cutoff *= 2;
  }
}

Eigen::VectorXcd coherent_amplitudes(cplx gamma, int cutoff) {
  Eigen::VectorXcd v(cutoff + 1);
  cplx c = std::exp(-0.5 * std::norm(gamma));
  for (int n = 0; n <= cutoff; ++n) {
    v[n] = c;
    c *= gamma / std::sqrt(n + 1.0);
  }
  return v;
}

cplx overlap(const TwoModeFockState& a, const TwoModeFockState& b) {
  const int n = std::min(a.cutoff(), b.cutoff()) + 1;
  // Entries outside the common block multiply zeros of the smaller state.
  return (a.amps().topLeftCorner(n, n).conjugate().cwiseProduct(b.amps().topLeftCorner(n, n))).sum();
}

Eigen::VectorXd schmidt_spectrum(const TwoModeFockState& state) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(state.amps());
  return svd.singularValues().array().square();
}

double von_neumann_entropy(const TwoModeFockState& state) {
  const double n2 = state.norm2();
  if (std::abs(n2 - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "von_neumann_entropy: state not normalized (norm^2 = " << n2 << ")";
    throw std::invalid_argument(msg.str());
  }
  double s = 0.0;
  for (double lam : schmidt_spectrum(state)) {
    if (lam > 1e-14) s -= lam * std::log(lam);
  }
  return s;
}

}  // namespace cvtele
