#pragma once

#include <optional>

#include "cvtele/resource.hpp"
#include "cvtele/states.hpp"

namespace cvtele {

enum class FidelityMethod { ClosedForm, Quadrature };

struct FidelityResult {
  double value = 0.0;
  FidelityMethod method = FidelityMethod::ClosedForm;
  double est_abs_error = 0.0;  // quadrature only
  std::optional<ResourceSpec> resource;
  std::optional<InputSpec> input;
};

struct QuadratureOptions {
  int order = 64;
  int refine_order = 128;
  /// Refinement disagreement above this raises IntegrationError.
  double max_abs_error = 1e-6;
};

/// chi_out(a) = chi_in(a) chi_res(conj(a), a) for the ideal protocol.
CharFn1 chi_out(const CharFn1& chi_in, const CharFn2& chi_res);

/// F = (1/pi) int d^2 l chi_in(l) chi_out(-l), tensor Gauss-Hermite after the
/// integrand's Gaussian envelope is mapped onto the weight. The reported value
/// comes from `refine_order`; est_abs_error is its distance to the `order` value.
/// Rejects mixed inputs, for which this overlap is not a fidelity.
FidelityResult fidelity_quadrature(const CharFn1& chi_in, const CharFn2& chi_res,
                                   const QuadratureOptions& opts = {});
FidelityResult fidelity_quadrature(const ResourceSpec& resource, const InputSpec& input,
                                   const QuadratureOptions& opts = {});

/// Exact fidelity of any supported (resource, input) pair.
///
/// Fock-superposition resources (TwB, SB, SSF) expand chi_res on the
/// teleportation diagonal into a polynomial in (l, conj l) times a Gaussian;
/// only the |l|^{2n} monomials survive the angular integral, each contributing
/// n!/A^{n+1}. Cat resources are a sum of four Gaussians with linear terms,
/// each integrating to exp(w^2/A)/A. Both hold for any phi, theta and thermal
/// dressing. Cats with a Fock input throw UnsupportedError.
double closed_form_fidelity(const ResourceSpec& resource, const InputSpec& input);
FidelityResult fidelity_closed_form(const ResourceSpec& resource, const InputSpec& input);

// Printed closed forms. Coherent input, phi = pi and theta = 0 throughout.

/// 1 / (1 + e^{-2r})
double fid_twb(double r);
double fid_sb(double r, double delta);
double fid_sb_thermal(double r, double nth1, double nth2, double delta);
double fid_cat_full(double r, double delta, cplx gamma);
/// Cat fidelity at delta = pi/4 and real gamma.
double fid_cat(double r, double gamma_abs);
double fid_cat_thermal(double r, double nth1, double nth2, double gamma_abs);

/// SSF fidelity at phi = pi for a coherent or single-photon input.
double fid_ssf(double r, double delta1, double theta_a, double delta2, double theta_b,
               InputKind input);

}  // namespace cvtele
