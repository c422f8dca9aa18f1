#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvtele {

using cplx = std::complex<double>;

/// Requested combination is outside what a routine supports (e.g. a mixed
/// resource on a pure-state path, or a cat resource with a Fock input).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-mode squeezing zeta = r e^{i phi}, acting as
/// S(zeta) = exp(-zeta a1^dag a2^dag + conj(zeta) a1 a2).
///
/// phi = pi is the phase at which the twin beam improves teleportation; it is
/// the default for every resource family.
struct SqueezeParam {
  double r = 0.0;
  double phi = std::numbers::pi;
};

enum class Family { TwB, SqueezedBell, SSF, SqueezedCat };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Parametric description of a two-mode resource.
///
/// Field use per family:
///   TwB          squeeze only
///   SqueezedBell cos(delta)|0,0> + e^{i theta} sin(delta)|1,1>
///   SSF          c1|0,0> + e^{i theta} c2|1,1> + e^{i theta2} c3|2,2>, with
///                c1 = cos(delta), c2 = sin(delta)cos(delta2), c3 = sin(delta)sin(delta2)
///   SqueezedCat  cos(delta)|0,0> + e^{i theta} sin(delta)|gamma,gamma>
/// all followed by S(zeta). nth1/nth2 dress the state with thermal photons.
struct ResourceSpec {
  Family family = Family::TwB;
  SqueezeParam squeeze;
  double delta = 0.0;
  double delta2 = 0.0;
  double theta = 0.0;
  double theta2 = 0.0;
  cplx gamma{0.0, 0.0};
  double nth1 = 0.0;
  double nth2 = 0.0;

  static ResourceSpec twb(double r, double phi = std::numbers::pi);
  static ResourceSpec squeezed_bell(double r, double delta, double theta = 0.0,
                                    double phi = std::numbers::pi);
  static ResourceSpec ssf(double r, double delta1, double theta_a, double delta2, double theta_b,
                          double phi = std::numbers::pi);
  static ResourceSpec squeezed_cat(double r, double delta, cplx gamma, double theta = 0.0,
                                   double phi = std::numbers::pi);
  /// SSF member with (c1,c2,c3) proportional to (1, tanh s, tanh^2 s).
  static ResourceSpec truncated_twb(double r, double s, double phi = std::numbers::pi);

  ResourceSpec with_thermal(double n1, double n2) const;

  bool pure() const { return nth1 == 0.0 && nth2 == 0.0; }

  /// Throws std::invalid_argument on negative/non-finite r or thermal numbers.
  void validate() const;

  /// Normalized amplitudes c_k of the pre-squeezing state sum_k c_k |k,k>.
  /// Only for TwB, SqueezedBell and SSF.
  std::vector<cplx> fock_coefficients() const;

  /// 1 / N^2 for the cat superposition: 1 + e^{-|gamma|^2} sin(2 delta) cos(theta).
  double cat_norm_squared() const;
};

enum class InputKind { Coherent, FockOne };

std::string_view input_name(InputKind k);
std::optional<InputKind> parse_input(std::string_view name);

/// Single-mode state to teleport. beta is read only for coherent inputs.
struct InputSpec {
  InputKind kind = InputKind::Coherent;
  cplx beta{0.0, 0.0};

  static InputSpec coherent(cplx beta) { return {InputKind::Coherent, beta}; }
  static InputSpec fock_one() { return {InputKind::FockOne, {0.0, 0.0}}; }
};

}  // namespace cvtele
