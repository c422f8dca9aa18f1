#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvtele/fock.hpp"
#include "cvtele/measures.hpp"
#include "cvtele/special.hpp"
#include "cvtele/states.hpp"

using namespace cvtele;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Moments, Vacuum) {
  const GaussianRef g = moments_from_fock(TwoModeFockState::vacuum(5));
  EXPECT_LT(g.mean.norm(), 1e-15);
  EXPECT_LT((g.cov - 0.5 * Eigen::Matrix4d::Identity()).norm(), 1e-14);
  EXPECT_NEAR(g.purity(), 1.0, 1e-14);
  EXPECT_NEAR(g.uncertainty_margin(), 0.0, 1e-12);
}

TEST(Moments, TwinBeamCovariance) {
  const double r = 0.7;
  const GaussianRef g = moments_from_fock(build_resource_fock_adaptive(ResourceSpec::twb(r)));
  const double c = 0.5 * std::cosh(2 * r), s = 0.5 * std::sinh(2 * r);
  Eigen::Matrix4d want = c * Eigen::Matrix4d::Identity();
  want(0, 2) = want(2, 0) = s;
  want(1, 3) = want(3, 1) = -s;
  EXPECT_LT((g.cov - want).norm(), 1e-8);
  EXPECT_LT(g.mean.norm(), 1e-12);
  EXPECT_NEAR(g.purity(), 1.0, 1e-8);
  EXPECT_TRUE(g.physical());
}

TEST(Moments, DisplacedPairMean) {
  // delta = pi/2 with r = 0 leaves the product coherent state |g, g>.
  const cplx gamma(0.8, 0.0);
  const auto psi = build_resource_fock_adaptive(ResourceSpec::squeezed_cat(0.0, kPi / 2, gamma));
  const GaussianRef g = moments_from_fock(psi);
  const double m = std::numbers::sqrt2 * gamma.real();
  EXPECT_LT((g.mean - Eigen::Vector4d(m, 0.0, m, 0.0)).norm(), 1e-9);
  EXPECT_LT((g.cov - 0.5 * Eigen::Matrix4d::Identity()).norm(), 1e-9);
}

TEST(Moments, UnphysicalCovarianceDetected) {
  GaussianRef g;
  g.cov = 0.2 * Eigen::Matrix4d::Identity();
  EXPECT_FALSE(g.physical());
  EXPECT_LT(g.uncertainty_margin(), 0.0);
}

TEST(Moments, GaussianChiMatchesResourceForTwinBeam) {
  const auto spec = ResourceSpec::twb(0.6);
  const GaussianRef g = moments_from_fock(build_resource_fock_adaptive(spec));
  const CharFn2 a = g.chi(), b = chi_resource(spec);
  for (auto [x, y] : {std::pair{cplx(0.3, 0.1), cplx(-0.2, 0.4)}, std::pair{cplx(1.0, -0.5), cplx(0.7, 0.7)}}) {
    EXPECT_NEAR(std::abs(a(x, y) - b(x, y)), 0.0, 1e-8);
  }
}

TEST(NonGaussianity, GaussianResourceIsZero) {
  const auto spec = ResourceSpec::twb(0.5);
  const GaussianRef g = moments_from_fock(build_resource_fock_adaptive(spec));
  const auto res = non_gaussianity(chi_resource(spec), g, true);
  EXPECT_NEAR(res.value, 0.0, 1e-7);
  EXPECT_NEAR(res.trace_rho_rhoG, 1.0, 1e-7);
  EXPECT_GE(res.refinement.size(), 2u);
}

TEST(NonGaussianity, SqueezedBellIsPositive) {
  const auto spec = ResourceSpec::squeezed_bell(0.4, 0.6);
  const GaussianRef g = moments_from_fock(build_resource_fock_adaptive(spec));
  const auto res = non_gaussianity(chi_resource(spec), g, true);
  EXPECT_GT(res.value, 1e-3);
  EXPECT_LT(res.value, 1.0);
  EXPECT_LE(res.trace_rhoG2, 1.0);
}

TEST(NonGaussianity, PhotonPairHandValue) {
  // |1,1> has covariance 3/2 I, so its reference is a product of nbar = 1 thermal states.
  const auto psi = TwoModeFockState::basis(1, 1, 4);
  const GaussianRef g = moments_from_fock(psi);
  EXPECT_LT((g.cov - 1.5 * Eigen::Matrix4d::Identity()).norm(), 1e-13);
  EXPECT_NEAR(g.purity(), 1.0 / 9.0, 1e-14);
  // <1|rho_th(nbar=1)|1> = 1/4 per mode.
  const auto res = non_gaussianity(chi_resource(ResourceSpec::ssf(0.0, kPi / 2, 0.0, 0.0, 0.0)), g, true);
  EXPECT_NEAR(res.trace_rho_rhoG, 1.0 / 16.0, 1e-7);
  EXPECT_NEAR(res.value, (1.0 + 1.0 / 9.0 - 2.0 / 16.0) / 2.0, 1e-7);
}

TEST(NonGaussianity, NonConvergenceThrows) {
  const auto spec = ResourceSpec::squeezed_cat(0.0, kPi / 4, 3.0);
  const GaussianRef g = moments_from_fock(build_resource_fock_adaptive(spec));
  NonGaussianityOptions opts;
  opts.order = 8;
  opts.order_step = 2;
  opts.max_order = 12;
  opts.tol = 1e-14;
  EXPECT_THROW(non_gaussianity(chi_resource(spec), g, true, opts), IntegrationError);
}

TEST(Affinity, TwinBeamIsItsOwnReference) {
  const double r = 0.9;
  const auto res = sv_affinity(build_resource_fock_adaptive(ResourceSpec::twb(r)), r + 2.0);
  EXPECT_NEAR(res.value, 1.0, 1e-10);
  EXPECT_NEAR(res.xi_star, r, 1e-4);
  EXPECT_LE(res.truncation_bound, 1e-6);
}

TEST(Affinity, PhotonPair) {
  // |<-xi|1,1>|^2 = sech^2 tanh^2, maximal 1/4 at tanh^2 = 1/2.
  const auto res = sv_affinity(TwoModeFockState::basis(1, 1, 4), 3.0);
  EXPECT_NEAR(res.value, 0.25, 1e-12);
  EXPECT_NEAR(res.xi_star, std::atanh(std::sqrt(0.5)), 1e-5);
  EXPECT_NEAR(sv_overlap(TwoModeFockState::basis(1, 1, 4), 0.3),
              std::pow(std::tanh(0.3) / std::cosh(0.3), 2), 1e-15);
}

TEST(Affinity, GlobalPhaseInvariant) {
  const auto psi = build_resource_fock_adaptive(ResourceSpec::squeezed_bell(0.5, 0.7));
  const auto a = sv_affinity(psi, 2.5);
  const auto b = sv_affinity(psi.scaled(std::polar(1.0, 1.1)), 2.5);
  EXPECT_NEAR(a.value, b.value, 1e-14);
  EXPECT_NEAR(a.xi_star, b.xi_star, 1e-9);
  EXPECT_GT(a.value, 0.0);
  EXPECT_LE(a.value, 1.0);
}

TEST(Affinity, SmallCutoffIsReported) {
  // A truncated twin beam at large r leaves lots of mass past a small cutoff.
  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(3, 3);
  const double t = std::tanh(2.0);
  for (int k = 0; k < 3; ++k) amps(k, k) = std::pow(t, k) / std::cosh(2.0);
  EXPECT_THROW(sv_affinity(TwoModeFockState(amps), 4.0), TruncationError);
}

TEST(Affinity, RejectsBadBracket) {
  EXPECT_THROW(sv_affinity(TwoModeFockState::vacuum(3), 0.0), std::invalid_argument);
}
