#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cvtele/resource.hpp"

namespace cvtele {

/// delta_max = atan(1 + e^{-2r}) / 2 for the pure squeezed Bell-like state.
double delta_max_pure(double r);

/// delta_max = atan(1 + e^{-2r} / (1 + n1 + n2)) / 2.
double delta_max_thermal(double r, double nth1, double nth2);

struct Bound {
  double lo;
  double hi;
};

struct MinimizeOptions {
  int max_evals = 4000;
  /// Simplex diameter at which Nelder-Mead stops.
  double xtol = 1e-10;
  /// Golden-section interval width in the coordinate polish.
  double polish_tol = 1e-9;
  bool record_trace = false;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::vector<std::pair<std::vector<double>, double>> trace;
};

/// Golden-section minimum of f on [lo, hi].
std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double lo,
                                             double hi, double tol);

/// Box-constrained Nelder-Mead from `start` (vertices projected onto the box),
/// followed by one restart and a coordinate-wise golden-section polish.
MinimizeResult nelder_mead_box(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const std::vector<Bound>& box,
                               const MinimizeOptions& opts = {});

/// Deterministic multistart lattice of `count` points in the box.
std::vector<std::vector<double>> seed_lattice(const std::vector<Bound>& box, int count);

struct OptOptions {
  int seeds = 8;
  MinimizeOptions minimize;
};

struct OptResult {
  Family family = Family::TwB;
  /// Free parameters by name, e.g. {"delta", 0.34}, {"theta", 0.0}.
  std::vector<std::pair<std::string, double>> best_params;
  ResourceSpec best_spec;
  double best_fidelity = 0.0;
  int evaluations = 0;
  bool converged = true;
  /// Parameters sitting on a face of the search box.
  std::vector<std::string> at_box_edge;
  /// Every evaluation, when requested through MinimizeOptions::record_trace.
  std::vector<std::pair<std::vector<double>, double>> grid_trace;

  double param(const std::string& name) const;
};

/// Names and search box of a family's free parameters at fixed r.
///   TwB: none. SqueezedBell: delta, theta. SSF: delta1, theta_a, delta2, theta_b.
///   SqueezedCat: gamma_abs (delta = pi/4, theta = 0, real gamma).
std::vector<std::pair<std::string, Bound>> search_space(Family family);

/// Maps free parameters to a spec at squeezing r (phi = pi) with thermal dressing.
ResourceSpec spec_from_params(Family family, double r, const std::vector<double>& params,
                              double nth1 = 0.0, double nth2 = 0.0);

/// Maximizes the closed-form teleportation fidelity over the family's free
/// parameters. Cats support coherent inputs only.
OptResult optimize_resource(Family family, const InputSpec& input, double r, double nth1 = 0.0,
                            double nth2 = 0.0, const OptOptions& opts = {});

struct CollapseFit {
  double s_tilde = 0.0;
  double residual = 0.0;
};

/// Best fit of the SSF coefficients to (1, tanh s, tanh^2 s)/norm, s in [0, 3];
/// the residual is the Euclidean distance of the complex coefficient vectors.
CollapseFit fit_truncated_twb(const ResourceSpec& ssf);
CollapseFit verify_truncated_twb_collapse(const OptResult& opt);

/// Best member of the squeezed truncated twin-beam curve: s maximizing the
/// fidelity of ResourceSpec::truncated_twb(r, s) over s in [0, s_hi].
struct TruncatedTwbOptimum {
  double s_tilde = 0.0;
  double fidelity = 0.0;
  ResourceSpec spec;
};

TruncatedTwbOptimum optimize_truncated_twb(const InputSpec& input, double r, double nth1 = 0.0,
                                           double nth2 = 0.0, double s_hi = 4.0);

struct ThresholdResult {
  double nth = 0.0;
  /// |F_opt(nth) - 1/2| at the returned root.
  double residual = 0.0;
  int iterations = 0;
};

/// Symmetric thermal number nth1 = nth2 = nth at which the re-optimized
/// coherent-input fidelity drops to 1/2, by bisection to `tol`. Returns 0 when
/// F_opt(0) is already 1/2; throws std::runtime_error when F_opt(0) < 1/2 or no
/// upper bracket is found.
ThresholdResult classical_threshold(Family family, double r, double tol = 1e-10,
                                    const OptOptions& opts = {});

}  // namespace cvtele
