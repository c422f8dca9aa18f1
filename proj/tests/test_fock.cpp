#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "cvtele/fock.hpp"

using namespace cvtele;

namespace {

// exp(-zeta a1^dag a2^dag + conj(zeta) a1 a2)|m0 + d, m0> by dense exponentiation on the
// sector {|k + d, k>, k <= kmax}, which the generator preserves.
Eigen::VectorXcd dense_squeeze(SqueezeParam z, int d, int m0, int kmax) {
  const cplx zeta = std::polar(z.r, z.phi);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(kmax + 1, kmax + 1);
  for (int k = 0; k < kmax; ++k) {
    const double c = std::sqrt((k + d + 1.0) * (k + 1.0));
    g(k + 1, k) = -zeta * c;
    g(k, k + 1) = std::conj(zeta) * c;
  }
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(kmax + 1);
  e[m0] = 1.0;
  return g.exp() * e;
}

}  // namespace

TEST(SqueezedFockPair, IdentitySqueezeGivesVacuum) {
  const auto s = squeezed_fock_pair({0.0, 0.0}, 0, 4);
  EXPECT_EQ(s.cutoff(), 4);
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(s(m, n), (m == 0 && n == 0) ? cplx(1.0) : cplx(0.0));
  }
}

TEST(SqueezedFockPair, TwinBeamAmplitudes) {
  const auto s = squeezed_fock_pair({1.0, 0.0}, 0, 60);
  const double sech = 1.0 / std::cosh(1.0);
  const double t = std::tanh(1.0);
  for (int m = 0; m <= 60; ++m) {
    for (int n = 0; n <= 60; ++n) {
      const cplx expect = m == n ? cplx(sech * std::pow(-t, m)) : cplx(0.0);
      EXPECT_NEAR(std::abs(s(m, n) - expect), 0.0, 1e-14);
    }
  }
}

TEST(SqueezedFockPair, MatchesDenseExponentialOnPairState) {
  const SqueezeParam z{0.5, std::numbers::pi};
  const auto s = squeezed_fock_pair(z, 1, 40);
  const Eigen::VectorXcd oracle = dense_squeeze(z, 0, 1, 80);
  for (int k = 0; k <= 40; ++k) EXPECT_NEAR(std::abs(s(k, k) - oracle[k]), 0.0, 1e-8) << k;
}

TEST(ApplyTwoModeSqueeze, MatchesDenseExponentialOffDiagonalSector) {
  const SqueezeParam z{0.7, 0.4};
  const auto in = TwoModeFockState::basis(3, 1, 60);
  const auto s = apply_two_mode_squeeze(in, z, 60);
  const Eigen::VectorXcd oracle = dense_squeeze(z, 2, 1, 100);
  for (int k = 0; k + 2 <= 60; ++k) EXPECT_NEAR(std::abs(s(k + 2, k) - oracle[k]), 0.0, 1e-10) << k;
  EXPECT_NEAR(s(0, 0).real(), 0.0, 0.0);
}

TEST(SqueezedFockPair, ReportsInadequateCutoff) {
  EXPECT_THROW(squeezed_fock_pair({1.5, 0.0}, 0, 10), TruncationError);
  try {
    squeezed_fock_pair({1.5, 0.0}, 0, 10);
  } catch (const TruncationError& e) {
    EXPECT_GT(e.lost_mass(), 1e-3);
  }
}

TEST(SqueezedFockPair, TailMassShrinksWithCutoff) {
  double prev = 1.0;
  for (int n : {10, 20, 40, 80}) {
    const auto s = apply_two_mode_squeeze(TwoModeFockState::vacuum(0), {1.2, 0.0}, n);
    EXPECT_LT(s.tail_mass(), prev);
    prev = s.tail_mass();
  }
  EXPECT_LT(prev, 1e-10);
}

TEST(BuildResourceFock, BellWithZeroDeltaIsTwinBeam) {
  const auto a = build_resource_fock(ResourceSpec::squeezed_bell(0.3, 0.0), 40);
  const auto b = squeezed_fock_pair({0.3, std::numbers::pi}, 0, 40);
  EXPECT_NEAR((a.amps() - b.amps()).norm(), 0.0, 1e-15);
}

TEST(BuildResourceFock, CatWithZeroGammaIsVacuum) {
  const auto a = build_resource_fock(ResourceSpec::squeezed_cat(0.0, std::numbers::pi / 4, 0.0), 10);
  EXPECT_NEAR(std::abs(a(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(a.norm2(), 1.0, 1e-14);
}

TEST(BuildResourceFock, CatNormalizationMatchesAnalyticFactor) {
  for (double theta : {0.0, 0.9, 2.5}) {
    const auto spec = ResourceSpec::squeezed_cat(0.4, 0.6, {0.8, -0.5}, theta);
    const auto s = build_resource_fock(spec, 60);
    EXPECT_NEAR(s.norm2(), 1.0, 1e-10);
  }
}

TEST(BuildResourceFock, TruncatedTwinBeamCoefficientNorm) {
  const double s = 0.4;
  const double t = std::tanh(s);
  const double raw = std::sqrt(1.0 + t * t + std::pow(t, 4));
  const auto c = ResourceSpec::truncated_twb(0.5, s).fock_coefficients();
  EXPECT_NEAR(std::abs(c[0]) * raw, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(c[1]) * raw, t, 1e-14);
  EXPECT_NEAR(std::abs(c[2]) * raw, t * t, 1e-14);
  EXPECT_NEAR(build_resource_fock(ResourceSpec::truncated_twb(0.5, s), 40).norm2(), 1.0, 1e-10);
}

TEST(BuildResourceFock, RejectsThermalSpec) {
  EXPECT_THROW(build_resource_fock(ResourceSpec::twb(0.5).with_thermal(0.1, 0.0), 40), UnsupportedError);
}

TEST(BuildResourceFock, AdaptiveCutoffReachesToleranceAtStrongSqueezing) {
  const auto s = build_resource_fock_adaptive(ResourceSpec::ssf(1.5, 0.6, 0.0, 0.5, 0.0));
  EXPECT_GT(s.cutoff(), 40);
  EXPECT_NEAR(s.norm2(), 1.0, 1e-10);
  EXPECT_LT(s.tail_mass(), 1e-10);
}

TEST(Overlap, BasicIdentities) {
  const auto psi = squeezed_fock_pair({0.8, 0.3}, 0, 40);
  const cplx self = overlap(psi, psi);
  EXPECT_NEAR(self.real(), psi.norm2(), 1e-14);
  EXPECT_EQ(self.imag(), 0.0);
  const double r = 0.7;
  EXPECT_NEAR(std::abs(overlap(TwoModeFockState::vacuum(40), squeezed_fock_pair({r, 0.0}, 0, 40)) -
                       1.0 / std::cosh(r)),
              0.0, 1e-14);
  const cplx k1 = overlap(TwoModeFockState::basis(1, 1, 60), squeezed_fock_pair({1.0, 0.0}, 0, 60));
  EXPECT_NEAR(std::abs(k1 - (-std::tanh(1.0) / std::cosh(1.0))), 0.0, 1e-14);
}

TEST(Overlap, EmbedsSmallerState) {
  const auto small = TwoModeFockState::basis(2, 2, 3);
  const auto big = squeezed_fock_pair({0.5, 0.0}, 0, 50);
  EXPECT_NEAR(std::abs(overlap(small, big) - big(2, 2)), 0.0, 1e-15);
  EXPECT_LE(std::abs(overlap(big, squeezed_fock_pair({0.9, 1.0}, 0, 50))), 1.0 + 1e-12);
}

TEST(Entropy, ProductStateHasNone) {
  EXPECT_NEAR(von_neumann_entropy(TwoModeFockState::vacuum(5)), 0.0, 1e-15);
}

TEST(Entropy, BellPairIsLn2) {
  EXPECT_NEAR(von_neumann_entropy(build_resource_fock(ResourceSpec::squeezed_bell(0.0, std::numbers::pi / 4), 3)),
              std::log(2.0), 1e-14);
}

TEST(Entropy, TwinBeamClosedForm) {
  for (double r : {0.2, 0.7, 1.3}) {
    const double c2 = std::pow(std::cosh(r), 2);
    const double s2 = std::pow(std::sinh(r), 2);
    const auto psi = build_resource_fock_adaptive(ResourceSpec::twb(r));
    EXPECT_NEAR(von_neumann_entropy(psi), c2 * std::log(c2) - s2 * std::log(s2), 1e-9) << r;
  }
}

TEST(Entropy, TwinBeamSchmidtSpectrumIsGeometric) {
  const double r = 0.9;
  const auto spec = schmidt_spectrum(squeezed_fock_pair({r, 0.0}, 0, 80));
  const double t2 = std::pow(std::tanh(r), 2);
  for (int k = 0; k < 20; ++k) EXPECT_NEAR(spec[k], std::pow(t2, k) * (1.0 - t2), 1e-12);
}

TEST(Entropy, RejectsUnnormalizedState) {
  EXPECT_THROW(von_neumann_entropy(TwoModeFockState::vacuum(3).scaled(0.5)), std::invalid_argument);
}

TEST(Entropy, UnsqueezedPhasesDoNotChangeEntanglement) {
  // At r = 0 the Schmidt weights are |c_k|^2 whatever the phases.
  const auto a = build_resource_fock(ResourceSpec::ssf(0.0, 0.7, 0.0, 0.5, 0.0), 4);
  const auto b = build_resource_fock(ResourceSpec::ssf(0.0, 0.7, 1.1, 0.5, -2.0), 4);
  const double w0 = std::pow(std::cos(0.7), 2), w1 = std::pow(std::sin(0.7) * std::cos(0.5), 2);
  const double w2 = 1.0 - w0 - w1;
  const double expect = -(w0 * std::log(w0) + w1 * std::log(w1) + w2 * std::log(w2));
  EXPECT_NEAR(von_neumann_entropy(a), expect, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(b), expect, 1e-12);
}

TEST(Entropy, GlobalPhaseDoesNotChangeEntanglement) {
  const auto a = build_resource_fock_adaptive(ResourceSpec::ssf(0.6, 0.7, 1.1, 0.5, -2.0));
  EXPECT_NEAR(von_neumann_entropy(a), von_neumann_entropy(a.scaled(std::polar(1.0, 2.3))), 1e-12);
}

TEST(Entropy, ModeSwapSymmetricSpectra) {
  const auto psi = build_resource_fock_adaptive(ResourceSpec::squeezed_cat(0.5, 0.7, {1.0, 0.3}, 0.4));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(psi.amps() * psi.amps().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(psi.amps().transpose() * psi.amps().conjugate());
  EXPECT_NEAR((es1.eigenvalues() - es2.eigenvalues()).cwiseAbs().maxCoeff(), 0.0, 1e-10);
}
