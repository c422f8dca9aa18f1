#include "cvtele/resource.hpp"

#include <cmath>

namespace cvtele {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::TwB: return "twb";
    case Family::SqueezedBell: return "sb";
    case Family::SSF: return "ssf";
    case Family::SqueezedCat: return "cat";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "twb") return Family::TwB;
  if (name == "sb") return Family::SqueezedBell;
  if (name == "ssf") return Family::SSF;
  if (name == "cat") return Family::SqueezedCat;
  return std::nullopt;
}

std::string_view input_name(InputKind k) {
  return k == InputKind::Coherent ? "coherent" : "fock1";
}

std::optional<InputKind> parse_input(std::string_view name) {
  if (name == "coherent") return InputKind::Coherent;
  if (name == "fock1") return InputKind::FockOne;
  return std::nullopt;
}

ResourceSpec ResourceSpec::twb(double r, double phi) {
  ResourceSpec s;
  s.family = Family::TwB;
  s.squeeze = {r, phi};
  return s;
}

ResourceSpec ResourceSpec::squeezed_bell(double r, double delta, double theta, double phi) {
  ResourceSpec s;
  s.family = Family::SqueezedBell;
  s.squeeze = {r, phi};
  s.delta = delta;
  s.theta = theta;
  return s;
}

ResourceSpec ResourceSpec::ssf(double r, double delta1, double theta_a, double delta2,
                               double theta_b, double phi) {
  ResourceSpec s;
  s.family = Family::SSF;
  s.squeeze = {r, phi};
  s.delta = delta1;
  s.theta = theta_a;
  s.delta2 = delta2;
  s.theta2 = theta_b;
  return s;
}

ResourceSpec ResourceSpec::squeezed_cat(double r, double delta, cplx gamma, double theta,
                                        double phi) {
  ResourceSpec s;
  s.family = Family::SqueezedCat;
  s.squeeze = {r, phi};
  s.delta = delta;
  s.theta = theta;
  s.gamma = gamma;
  return s;
}

ResourceSpec ResourceSpec::truncated_twb(double r, double s, double phi) {
  const double t = std::tanh(s);
  const double norm = std::sqrt(1.0 + t * t + t * t * t * t);
  return ssf(r, std::acos(1.0 / norm), 0.0, std::atan2(t * t, t), 0.0, phi);
}

ResourceSpec ResourceSpec::with_thermal(double n1, double n2) const {
  ResourceSpec s = *this;
  s.nth1 = n1;
  s.nth2 = n2;
  return s;
}

void ResourceSpec::validate() const {
  if (!std::isfinite(squeeze.r) || squeeze.r < 0.0) {
    throw std::invalid_argument("squeezing r must be finite and nonnegative");
  }
  if (!std::isfinite(nth1) || !std::isfinite(nth2) || nth1 < 0.0 || nth2 < 0.0) {
    throw std::invalid_argument("thermal photon numbers must be finite and nonnegative");
  }
}

std::vector<cplx> ResourceSpec::fock_coefficients() const {
  switch (family) {
    case Family::TwB:
      return {1.0};
    case Family::SqueezedBell:
      return {std::cos(delta), std::polar(std::sin(delta), theta)};
    case Family::SSF:
      return {std::cos(delta), std::polar(std::sin(delta) * std::cos(delta2), theta),
              std::polar(std::sin(delta) * std::sin(delta2), theta2)};
    case Family::SqueezedCat:
      break;
  }
  throw UnsupportedError("cat resources are not finite Fock superpositions");
}

double ResourceSpec::cat_norm_squared() const {
  return 1.0 + std::exp(-std::norm(gamma)) * std::sin(2.0 * delta) * std::cos(theta);
}

}  // namespace cvtele
