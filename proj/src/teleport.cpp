#include "cvtele/teleport.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "cvtele/special.hpp"

namespace cvtele {

namespace {

// (x, y) -> (Re a1, Im a1, Re a2, Im a2) of (conj(l), l), l = x + iy.
Eigen::Matrix<double, 4, 2> diagonal_embedding() {
  Eigen::Matrix<double, 4, 2> p;
  p << 1, 0,
       0, -1,
       1, 0,
       0, 1;
  return p;
}

// Polynomial in (l, conj l): coefficient of l^a conj(l)^b at (a, b).
class DiagPoly {
 public:
  explicit DiagPoly(int dim) : dim_(dim), c_(dim * dim, 0.0) {}

  int dim() const { return dim_; }
  cplx& at(int a, int b) { return c_[a * dim_ + b]; }
  cplx at(int a, int b) const { return c_[a * dim_ + b]; }

  DiagPoly operator*(const DiagPoly& o) const {
    const int kMax = dim_;
    DiagPoly out(kMax);
    for (int a = 0; a < kMax; ++a) {
      for (int b = 0; b < kMax; ++b) {
        const cplx x = at(a, b);
        if (x == 0.0) continue;
        for (int c = 0; a + c < kMax && c < o.dim_; ++c) {
          for (int d = 0; b + d < kMax && d < o.dim_; ++d) {
            const cplx y = o.at(c, d);
            if (y != 0.0) out.at(a + c, b + d) += x * y;
          }
        }
      }
    }
    return out;
  }

  DiagPoly& operator+=(const DiagPoly& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  /// (1/pi) int d^2 l poly * exp(-A |l|^2)
  cplx gaussian_moment(double a) const {
    cplx sum = 0.0;
    double fact = 1.0;
    for (int n = 0; n < dim_; ++n) {
      if (n > 0) fact *= n;
      sum += at(n, n) * fact / std::pow(a, n + 1);
    }
    return sum;
  }

 private:
  int dim_;
  std::vector<cplx> c_;
};

cplx ipow(cplx x, int n) {
  cplx out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

// <j|D(x)|k> exp(|x|^2/2) = sum_l sqrt(j!k!)/(l!(j-l)!(k-l)!) x^{j-l} (-conj x)^{k-l}.
// Mode 1 takes x = -kappa conj(l), mode 2 takes x = -kappa l.
DiagPoly mode_factor(int j, int k, cplx kappa, bool first_mode, int dim) {
  DiagPoly p(dim);
  const double sj = std::sqrt(std::tgamma(j + 1.0) * std::tgamma(k + 1.0));
  for (int l = 0; l <= std::min(j, k); ++l) {
    const int pp = j - l;
    const int qq = k - l;
    const double w = sj / (std::tgamma(l + 1.0) * std::tgamma(pp + 1.0) * std::tgamma(qq + 1.0));
    const cplx coef = w * ipow(-kappa, pp) * ipow(std::conj(kappa), qq);
    if (first_mode) {
      p.at(qq, pp) += coef;  // x^p -> conj(l)^p, (-conj x)^q -> l^q
    } else {
      p.at(pp, qq) += coef;
    }
  }
  return p;
}

cplx kappa_of(SqueezeParam z) { return std::cosh(z.r) + std::polar(std::sinh(z.r), z.phi); }

double fock_superposition_fidelity(const ResourceSpec& spec, const InputSpec& input) {
  const auto coef = spec.fock_coefficients();
  const cplx kappa = kappa_of(spec.squeeze);
  const int n = static_cast<int>(coef.size());

  // Degree per variable: 2 (n - 1) from the resource, 2 from a Fock input.
  const int dim = 2 * (n - 1) + 3;
  DiagPoly res(dim);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const cplx w = std::conj(coef[j]) * coef[k];
      if (w == 0.0) continue;
      DiagPoly term = mode_factor(j, k, kappa, true, dim) * mode_factor(j, k, kappa, false, dim);
      for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) term.at(a, b) *= w;
      }
      res += term;
    }
  }

  DiagPoly in(dim);
  if (input.kind == InputKind::Coherent) {
    in.at(0, 0) = 1.0;
  } else {
    // (1 - |l|^2)^2
    in.at(0, 0) = 1.0;
    in.at(1, 1) = -2.0;
    in.at(2, 2) = 1.0;
  }
  const double a = 1.0 + std::norm(kappa) + spec.nth1 + spec.nth2;
  return std::real((res * in).gaussian_moment(a));
}

double cat_fidelity(const ResourceSpec& spec) {
  const cplx kappa = kappa_of(spec.squeeze);
  const double a = 1.0 + std::norm(kappa) + spec.nth1 + spec.nth2;
  const std::array<cplx, 2> amp{std::cos(spec.delta), std::polar(std::sin(spec.delta), spec.theta)};
  const std::array<cplx, 2> loc{0.0, spec.gamma};
  cplx sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const cplx u = loc[i];
      const cplx v = loc[j];
      const cplx w = std::conj(kappa) * v - kappa * std::conj(u);
      const cplx lead = std::exp(-std::norm(u) - std::norm(v) + 2.0 * std::conj(u) * v);
      sum += std::conj(amp[i]) * amp[j] * lead * std::exp(w * w / a) / a;
    }
  }
  return std::real(sum) / spec.cat_norm_squared();
}

}  // namespace

CharFn1 chi_out(const CharFn1& chi_in, const CharFn2& chi_res) {
  const Eigen::Matrix<double, 4, 2> p = diagonal_embedding();
  const Eigen::Matrix2d env = chi_in.envelope() + p.transpose() * chi_res.envelope() * p;
  return CharFn1([chi_in, chi_res](cplx a) { return chi_in(a) * chi_res(std::conj(a), a); }, env,
                 chi_in.pure() && chi_res.pure());
}

FidelityResult fidelity_quadrature(const CharFn1& chi_in, const CharFn2& chi_res,
                                   const QuadratureOptions& opts) {
  if (!chi_in.pure()) {
    throw UnsupportedError("fidelity_quadrature: input state must be pure");
  }
  const CharFn1 out = chi_out(chi_in, chi_res);
  const Eigen::Matrix2d env = chi_in.envelope() + out.envelope();
  auto integrand = [&](const Eigen::Vector2d& x) {
    const cplx l(x[0], x[1]);
    return chi_in(l) * out(-l);
  };
  const cplx coarse = integrate_with_envelope<2>(integrand, env, opts.order) / std::numbers::pi;
  const cplx fine = integrate_with_envelope<2>(integrand, env, opts.refine_order) / std::numbers::pi;
  const double err = std::abs(fine - coarse);
  if (!(err <= opts.max_abs_error) || !std::isfinite(std::real(fine))) {
    std::ostringstream msg;
    msg << "fidelity quadrature did not converge: order " << opts.order << " -> " << coarse
        << ", order " << opts.refine_order << " -> " << fine << " (|diff| " << err << ")";
    throw IntegrationError(msg.str());
  }
  FidelityResult r;
  r.value = std::real(fine);
  r.method = FidelityMethod::Quadrature;
  r.est_abs_error = err;
  return r;
}

FidelityResult fidelity_quadrature(const ResourceSpec& resource, const InputSpec& input,
                                   const QuadratureOptions& opts) {
  FidelityResult r = fidelity_quadrature(chi_input(input), chi_resource(resource), opts);
  r.resource = resource;
  r.input = input;
  return r;
}

double closed_form_fidelity(const ResourceSpec& resource, const InputSpec& input) {
  resource.validate();
  if (resource.family == Family::SqueezedCat) {
    if (input.kind != InputKind::Coherent) {
      throw UnsupportedError("cat resources are supported for coherent inputs only");
    }
    return cat_fidelity(resource);
  }
  return fock_superposition_fidelity(resource, input);
}

FidelityResult fidelity_closed_form(const ResourceSpec& resource, const InputSpec& input) {
  FidelityResult r;
  r.value = closed_form_fidelity(resource, input);
  r.method = FidelityMethod::ClosedForm;
  r.resource = resource;
  r.input = input;
  return r;
}

double fid_twb(double r) { return 1.0 / (1.0 + std::exp(-2.0 * r)); }

double fid_sb(double r, double delta) { return fid_sb_thermal(r, 0.0, 0.0, delta); }

double fid_sb_thermal(double r, double nth1, double nth2, double delta) {
  const double f = 1.0 + nth1 + nth2;
  const double e = std::exp(2.0 * r) * f;
  const double num = 1.0 + e + e * e + e * std::cos(2.0 * delta) + (1.0 + e) * std::sin(2.0 * delta);
  return num / (std::exp(-2.0 * r) * std::pow(1.0 + e, 3));
}

double fid_cat_full(double r, double delta, cplx gamma) {
  const double g2 = std::norm(gamma);
  const double d = 1.0 + std::exp(2.0 * r);
  const cplx im2 = (gamma - std::conj(gamma)) * (gamma - std::conj(gamma));
  const cplx num = std::cos(delta) * std::cos(delta) + std::exp(im2 / d) * std::sin(delta) * std::sin(delta) +
                   std::exp(-g2) * (std::exp(gamma * gamma / d) + std::exp(std::conj(gamma * gamma) / d)) *
                       std::sin(delta) * std::cos(delta);
  return std::real(num) / ((1.0 + std::exp(-2.0 * r)) * (1.0 + std::exp(-g2) * std::sin(2.0 * delta)));
}

double fid_cat(double r, double gamma_abs) {
  const double g2 = gamma_abs * gamma_abs;
  const double e = std::exp(-2.0 * r);
  return (1.0 + std::exp(-g2 / (1.0 + e))) / ((1.0 + e) * (1.0 + std::exp(-g2)));
}

double fid_cat_thermal(double r, double nth1, double nth2, double gamma_abs) {
  const double g2 = gamma_abs * gamma_abs;
  const double ef = std::exp(2.0 * r) * (1.0 + nth1 + nth2);
  return (1.0 + std::exp(-g2) * std::exp(g2 / (1.0 + ef))) /
         (std::exp(-2.0 * r) * (1.0 + ef) * (1.0 + std::exp(-g2)));
}

double fid_ssf(double r, double delta1, double theta_a, double delta2, double theta_b,
               InputKind input) {
  return closed_form_fidelity(ResourceSpec::ssf(r, delta1, theta_a, delta2, theta_b),
                              InputSpec{input, {0.0, 0.0}});
}

}  // namespace cvtele
