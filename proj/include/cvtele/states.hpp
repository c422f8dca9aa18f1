#pragma once

#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "cvtele/resource.hpp"

namespace cvtele {

/// Symmetrically ordered one-mode characteristic function chi(alpha) = Tr[rho D(alpha)].
///
/// Besides the map itself, carries a Gaussian envelope: a 2x2 form Q in
/// (Re alpha, Im alpha) with |chi| ~ poly * exp(-x^T Q x). Quadrature uses it to
/// scale its nodes.
class CharFn1 {
 public:
  using Fn = std::function<cplx(cplx)>;

  CharFn1(Fn fn, Eigen::Matrix2d envelope, bool pure);

  cplx operator()(cplx alpha) const { return (*fn_)(alpha); }
  const Eigen::Matrix2d& envelope() const { return envelope_; }
  bool pure() const { return pure_; }

 private:
  std::shared_ptr<const Fn> fn_;
  Eigen::Matrix2d envelope_;
  bool pure_;
};

/// Two-mode counterpart of CharFn1; the envelope is a 4x4 form in
/// (Re a1, Im a1, Re a2, Im a2).
class CharFn2 {
 public:
  using Fn = std::function<cplx(cplx, cplx)>;

  CharFn2(Fn fn, Eigen::Matrix4d envelope, bool pure);

  cplx operator()(cplx a1, cplx a2) const { return (*fn_)(a1, a2); }
  cplx operator()(const Eigen::Vector4d& x) const { return (*fn_)({x[0], x[1]}, {x[2], x[3]}); }
  const Eigen::Matrix4d& envelope() const { return envelope_; }
  bool pure() const { return pure_; }

 private:
  std::shared_ptr<const Fn> fn_;
  Eigen::Matrix4d envelope_;
  bool pure_;
};

/// chi of the coherent state |beta>: exp(-|a|^2/2 + 2i Im[a conj(beta)]).
CharFn1 chi_coherent(cplx beta);

/// chi of |1>: exp(-|a|^2/2) (1 - |a|^2).
CharFn1 chi_fock1();

CharFn1 chi_input(const InputSpec& input);

/// <m|D(alpha)|n> from the Laguerre form; m < n goes through conj(<n|D(-alpha)|m>).
cplx displaced_fock_element(int m, int n, cplx alpha);

/// Real 4x4 matrix taking (Re a1, Im a1, Re a2, Im a2) to the same coordinates of
/// (a1 cosh r + conj(a2) e^{i phi} sinh r, a2 cosh r + conj(a1) e^{i phi} sinh r),
/// so that S^dag D1(a1) D2(a2) S = D1(abar1) D2(abar2).
Eigen::Matrix4d bogoliubov_map(SqueezeParam zeta);

/// Closed-form chi of a resource (pure or thermal-dressed).
CharFn2 chi_resource(const ResourceSpec& spec);

/// Pointwise product with exp(-n1 |a1|^2 - n2 |a2|^2). The result is flagged
/// mixed whenever a thermal number is positive.
CharFn2 thermal_dress(const CharFn2& chi, double nth1, double nth2);

}  // namespace cvtele
