#include "cvtele/states.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cvtele/special.hpp"

namespace cvtele {

CharFn1::CharFn1(Fn fn, Eigen::Matrix2d envelope, bool pure)
    : fn_(std::make_shared<const Fn>(std::move(fn))), envelope_(envelope), pure_(pure) {}

CharFn2::CharFn2(Fn fn, Eigen::Matrix4d envelope, bool pure)
    : fn_(std::make_shared<const Fn>(std::move(fn))), envelope_(envelope), pure_(pure) {}

CharFn1 chi_coherent(cplx beta) {
  return CharFn1(
      [beta](cplx a) {
        return std::exp(cplx(-0.5 * std::norm(a), 2.0 * std::imag(a * std::conj(beta))));
      },
      0.5 * Eigen::Matrix2d::Identity(), true);
}

CharFn1 chi_fock1() {
  return CharFn1(
      [](cplx a) {
        const double t = std::norm(a);
        return cplx(std::exp(-0.5 * t) * (1.0 - t), 0.0);
      },
      0.5 * Eigen::Matrix2d::Identity(), true);
}

CharFn1 chi_input(const InputSpec& input) {
  return input.kind == InputKind::Coherent ? chi_coherent(input.beta) : chi_fock1();
}

namespace {

// <m|D(a)|n> without the exp(-|a|^2/2) factor, m >= n.
cplx displaced_poly_part(int m, int n, cplx a, double abs2) {
  const int d = m - n;
  cplx pw = 1.0;
  for (int i = 0; i < d; ++i) pw *= a;
  const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
  return ratio * pw * assoc_laguerre(n, d, abs2);
}

// Matrix of <j|D(a)|k> for j,k <= kmax, sharing one exponential.
void displacement_block(int kmax, cplx a, std::vector<cplx>& out) {
  const double abs2 = std::norm(a);
  const double g = std::exp(-0.5 * abs2);
  const int n = kmax + 1;
  out.assign(n * n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      cplx v;
      if (j >= k) {
        v = displaced_poly_part(j, k, a, abs2);
      } else {
        v = std::conj(displaced_poly_part(k, j, -a, abs2));
      }
      out[j * n + k] = g * v;
    }
  }
}

// <a|D(x)|b> for coherent states a, b.
cplx coherent_element(cplx a, cplx b, cplx x) {
  return std::exp(-0.5 * std::norm(x) - 0.5 * std::norm(a) - 0.5 * std::norm(b) -
                  std::conj(x) * b + std::conj(a) * x + std::conj(a) * b);
}

Eigen::Matrix4d resource_envelope(const ResourceSpec& spec) {
  const Eigen::Matrix4d m = bogoliubov_map(spec.squeeze);
  Eigen::Matrix4d q = 0.5 * m.transpose() * m;
  q.diagonal() += Eigen::Vector4d(spec.nth1, spec.nth1, spec.nth2, spec.nth2);
  return q;
}

}  // namespace

cplx displaced_fock_element(int m, int n, cplx alpha) {
  if (m < 0 || n < 0) throw std::invalid_argument("displaced_fock_element: negative index");
  const double abs2 = std::norm(alpha);
  const double g = std::exp(-0.5 * abs2);
  if (m >= n) return g * displaced_poly_part(m, n, alpha, abs2);
  return g * std::conj(displaced_poly_part(n, m, -alpha, abs2));
}

Eigen::Matrix4d bogoliubov_map(SqueezeParam zeta) {
  const double c = std::cosh(zeta.r);
  const double s = std::sinh(zeta.r);
  const double cp = std::cos(zeta.phi);
  const double sp = std::sin(zeta.phi);
  Eigen::Matrix4d m;
  m << c, 0, s * cp, s * sp,
       0, c, s * sp, -s * cp,
       s * cp, s * sp, c, 0,
       s * sp, -s * cp, 0, c;
  return m;
}

CharFn2 chi_resource(const ResourceSpec& spec) {
  spec.validate();
  const double c = std::cosh(spec.squeeze.r);
  const cplx es = std::polar(std::sinh(spec.squeeze.r), spec.squeeze.phi);
  auto transform = [c, es](cplx a1, cplx a2) {
    return std::pair<cplx, cplx>{a1 * c + std::conj(a2) * es, a2 * c + std::conj(a1) * es};
  };

  CharFn2::Fn pure_fn;
  if (spec.family == Family::SqueezedCat) {
    const double norm = 1.0 / spec.cat_norm_squared();
    const std::array<cplx, 2> amp{std::cos(spec.delta), std::polar(std::sin(spec.delta), spec.theta)};
    const std::array<cplx, 2> loc{0.0, spec.gamma};
    pure_fn = [=](cplx a1, cplx a2) {
      const auto [b1, b2] = transform(a1, a2);
      cplx sum = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          sum += std::conj(amp[i]) * amp[j] * coherent_element(loc[i], loc[j], b1) *
                 coherent_element(loc[i], loc[j], b2);
        }
      }
      return norm * sum;
    };
  } else {
    const std::vector<cplx> coef = spec.fock_coefficients();
    const int kmax = static_cast<int>(coef.size()) - 1;
    pure_fn = [=](cplx a1, cplx a2) {
      const auto [b1, b2] = transform(a1, a2);
      thread_local std::vector<cplx> d1, d2;
      displacement_block(kmax, b1, d1);
      displacement_block(kmax, b2, d2);
      const int n = kmax + 1;
      cplx sum = 0.0;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) sum += std::conj(coef[j]) * coef[k] * d1[j * n + k] * d2[j * n + k];
      }
      return sum;
    };
  }

  CharFn2 pure(std::move(pure_fn), resource_envelope(spec.with_thermal(0.0, 0.0)), true);
  if (spec.pure()) return pure;
  return thermal_dress(pure, spec.nth1, spec.nth2);
}

CharFn2 thermal_dress(const CharFn2& chi, double nth1, double nth2) {
  if (!(nth1 >= 0.0) || !(nth2 >= 0.0)) {
    throw std::invalid_argument("thermal_dress: thermal photon numbers must be nonnegative");
  }
  if (nth1 == 0.0 && nth2 == 0.0) return chi;
  Eigen::Matrix4d env = chi.envelope();
  env.diagonal() += Eigen::Vector4d(nth1, nth1, nth2, nth2);
  return CharFn2(
      [chi, nth1, nth2](cplx a1, cplx a2) {
        return std::exp(-nth1 * std::norm(a1) - nth2 * std::norm(a2)) * chi(a1, a2);
      },
      env, false);
}

}  // namespace cvtele
