#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "cvtele/resource.hpp"

namespace cvtele {

/// Cutoff too small for the requested state: probability mass was lost past it.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double lost_mass)
      : std::runtime_error(what), lost_mass_(lost_mass) {}
  double lost_mass() const { return lost_mass_; }

 private:
  double lost_mass_;
};

/// Default tolerance on mass lost to truncation.
inline constexpr double kTailTolerance = 1e-10;

/// Pure two-mode state on the truncated Fock space {|m,n> : m,n <= cutoff}.
/// amps(m, n) = <m,n|psi>.
class TwoModeFockState {
 public:
  explicit TwoModeFockState(Eigen::MatrixXcd amps);

  static TwoModeFockState vacuum(int cutoff);
  static TwoModeFockState basis(int m, int n, int cutoff);

  int cutoff() const { return static_cast<int>(amps_.rows()) - 1; }
  const Eigen::MatrixXcd& amps() const { return amps_; }
  cplx operator()(int m, int n) const { return amps_(m, n); }

  double norm2() const { return amps_.squaredNorm(); }
  /// Mass on the outermost shell, sum over m == cutoff or n == cutoff.
  double tail_mass() const;

  /// Same state embedded in a larger cutoff (zero padded).
  TwoModeFockState embedded(int cutoff) const;
  TwoModeFockState scaled(cplx factor) const;

 private:
  Eigen::MatrixXcd amps_;
};

/// S(zeta)|psi> computed from the normal-ordered factorization
/// exp(-e^{i phi} t a1^dag a2^dag) sech(r)^{n1+n2+1} exp(e^{-i phi} t a1 a2),
/// t = tanh r. The result lives on `out_cutoff`, which must be >= the input
/// cutoff; mass beyond it is dropped (not renormalized).
TwoModeFockState apply_two_mode_squeeze(const TwoModeFockState& psi, SqueezeParam zeta,
                                        int out_cutoff);

/// S(zeta)|n,n> on the given cutoff. Throws TruncationError when the mass lost
/// beyond the cutoff exceeds `tail_tolerance`.
TwoModeFockState squeezed_fock_pair(SqueezeParam zeta, int n, int cutoff,
                                    double tail_tolerance = kTailTolerance);

/// Fock expansion of a pure resource, normalized analytically (truncation loss
/// shows up as 1 - norm2). Throws UnsupportedError for thermal-dressed specs and
/// TruncationError when the loss exceeds `tail_tolerance`.
TwoModeFockState build_resource_fock(const ResourceSpec& spec, int cutoff,
                                     double tail_tolerance = kTailTolerance);

/// Doubles the cutoff from `start_cutoff` until both the truncation loss and the
/// outer-shell mass fall below `tail_tolerance`.
TwoModeFockState build_resource_fock_adaptive(const ResourceSpec& spec,
                                              double tail_tolerance = kTailTolerance,
                                              int start_cutoff = 40, int max_cutoff = 640);

/// Fock amplitudes e^{-|g|^2/2} g^n / sqrt(n!) of a coherent state, n <= cutoff.
Eigen::VectorXcd coherent_amplitudes(cplx gamma, int cutoff);

/// <a|b>; the smaller state is zero-padded to the larger cutoff.
cplx overlap(const TwoModeFockState& a, const TwoModeFockState& b);

/// Schmidt coefficients squared (descending), i.e. the spectrum of the reduced
/// state of either mode.
Eigen::VectorXd schmidt_spectrum(const TwoModeFockState& state);

/// Entanglement entropy in nats. Requires |norm2 - 1| <= 1e-8.
double von_neumann_entropy(const TwoModeFockState& state);

}  // namespace cvtele
