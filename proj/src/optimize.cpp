#include "cvtele/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cvtele/teleport.hpp"

namespace cvtele {

double delta_max_pure(double r) { return delta_max_thermal(r, 0.0, 0.0); }

double delta_max_thermal(double r, double nth1, double nth2) {
  if (!(r >= 0.0) || !(nth1 >= 0.0) || !(nth2 >= 0.0)) {
    throw std::invalid_argument("delta_max: r and thermal numbers must be nonnegative");
  }
  return 0.5 * std::atan(1.0 + std::exp(-2.0 * r) / (1.0 + nth1 + nth2));
}

std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double lo,
                                             double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 > f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

namespace {

using Point = std::vector<double>;

Point project(Point x, const std::vector<Bound>& box) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box[i].lo, box[i].hi);
  return x;
}

struct Counter {
  const std::function<double(const Point&)>& f;
  const MinimizeOptions& opts;
  MinimizeResult& res;

  double operator()(const Point& x) {
    const double v = f(x);
    ++res.evaluations;
    if (opts.record_trace) res.trace.emplace_back(x, v);
    if (res.x.empty() || v < res.value) {
      res.x = x;
      res.value = v;
    }
    return v;
  }
};

// One Nelder-Mead descent; returns true if the simplex collapsed below xtol.
bool descend(Counter& eval, const Point& start, const std::vector<Bound>& box, double step_frac,
             int budget, double xtol) {
  const std::size_t n = start.size();
  std::vector<Point> simplex{project(start, box)};
  for (std::size_t i = 0; i < n; ++i) {
    Point v = simplex[0];
    const double h = step_frac * (box[i].hi - box[i].lo);
    v[i] = v[i] + h <= box[i].hi ? v[i] + h : v[i] - h;
    simplex.push_back(project(v, box));
  }
  std::vector<double> fv;
  for (const auto& v : simplex) fv.push_back(eval(v));

  const int stop_at = eval.res.evaluations + budget;
  std::vector<std::size_t> order(n + 1);
  while (eval.res.evaluations < stop_at) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (const auto& v : simplex) {
      for (std::size_t i = 0; i < n; ++i) diameter = std::max(diameter, std::abs(v[i] - simplex[best][i]));
    }
    if (diameter < xtol) return true;

    Point centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / n;
    }
    auto along = [&](double t) {
      Point p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      return project(p, box);
    };

    const Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      const Point xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const Point xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
      fv[k] = eval(simplex[k]);
    }
  }
  return false;
}

}  // namespace

MinimizeResult nelder_mead_box(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const std::vector<Bound>& box,
                               const MinimizeOptions& opts) {
  if (start.size() != box.size() || start.empty()) {
    throw std::invalid_argument("nelder_mead_box: start and box dimensions differ");
  }
  MinimizeResult res;
  Counter eval{f, opts, res};
  const int half = opts.max_evals / 2;
  bool ok = descend(eval, start, box, 0.1, half, opts.xtol);
  // A restart from the best vertex undoes premature collapse of the simplex.
  ok = descend(eval, res.x, box, 1e-3, opts.max_evals - res.evaluations, opts.xtol) && ok;

  for (int sweep = 0; sweep < 20; ++sweep) {
    double moved = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      Point x = res.x;
      const double lo = std::max(box[i].lo, x[i] - 1e-3);
      const double hi = std::min(box[i].hi, x[i] + 1e-3);
      const double before = x[i];
      golden_section_min(
          [&](double t) {
            x[i] = t;
            return eval(x);
          },
          lo, hi, opts.polish_tol);
      moved = std::max(moved, std::abs(res.x[i] - before));
    }
    if (moved < opts.polish_tol) break;
  }
  res.converged = ok;
  return res;
}

std::vector<std::vector<double>> seed_lattice(const std::vector<Bound>& box, int count) {
  static constexpr std::array<double, 4> kRoots{0.0, 0.41421356237309515, 0.7320508075688772,
                                                0.2360679774997898};
  std::vector<std::vector<double>> seeds;
  for (int s = 0; s < count; ++s) {
    std::vector<double> p(box.size());
    for (std::size_t d = 0; d < box.size(); ++d) {
      double u = d == 0 ? (s + 0.5) / count : 0.5 + s * kRoots[d % kRoots.size()];
      u -= std::floor(u);
      p[d] = box[d].lo + u * (box[d].hi - box[d].lo);
    }
    seeds.push_back(std::move(p));
  }
  return seeds;
}

double OptResult::param(const std::string& name) const {
  for (const auto& [k, v] : best_params) {
    if (k == name) return v;
  }
  throw std::out_of_range("OptResult: no parameter " + name);
}

std::vector<std::pair<std::string, Bound>> search_space(Family family) {
  const double half_pi = std::numbers::pi / 2.0;
  const Bound angle{0.0, half_pi};
  const Bound phase{-std::numbers::pi, std::numbers::pi};
  switch (family) {
    case Family::TwB:
      return {};
    case Family::SqueezedBell:
      return {{"delta", angle}, {"theta", phase}};
    case Family::SSF:
      return {{"delta1", angle}, {"theta_a", phase}, {"delta2", angle}, {"theta_b", phase}};
    case Family::SqueezedCat:
      return {{"gamma_abs", {0.0, 6.0}}};
  }
  throw std::invalid_argument("search_space: unknown family");
}

ResourceSpec spec_from_params(Family family, double r, const std::vector<double>& p, double nth1,
                              double nth2) {
  ResourceSpec s;
  switch (family) {
    case Family::TwB:
      s = ResourceSpec::twb(r);
      break;
    case Family::SqueezedBell:
      s = ResourceSpec::squeezed_bell(r, p.at(0), p.at(1));
      break;
    case Family::SSF:
      s = ResourceSpec::ssf(r, p.at(0), p.at(1), p.at(2), p.at(3));
      break;
    case Family::SqueezedCat:
      s = ResourceSpec::squeezed_cat(r, std::numbers::pi / 4.0, {p.at(0), 0.0});
      break;
  }
  return s.with_thermal(nth1, nth2);
}

OptResult optimize_resource(Family family, const InputSpec& input, double r, double nth1,
                            double nth2, const OptOptions& opts) {
  if (family == Family::SqueezedCat && input.kind != InputKind::Coherent) {
    throw UnsupportedError("cat resources are optimized for coherent inputs only");
  }
  const auto space = search_space(family);
  OptResult out;
  out.family = family;

  if (space.empty()) {
    out.best_spec = spec_from_params(family, r, {}, nth1, nth2);
    out.best_fidelity = closed_form_fidelity(out.best_spec, input);
    out.evaluations = 1;
    return out;
  }

  std::vector<Bound> box;
  for (const auto& [name, b] : space) box.push_back(b);
  auto objective = [&](const std::vector<double>& p) {
    return -closed_form_fidelity(spec_from_params(family, r, p, nth1, nth2), input);
  };

  MinimizeResult best;
  bool have = false;
  bool all_converged = true;
  for (const auto& seed : seed_lattice(box, opts.seeds)) {
    MinimizeResult run = nelder_mead_box(objective, seed, box, opts.minimize);
    out.evaluations += run.evaluations;
    all_converged = all_converged && run.converged;
    if (opts.minimize.record_trace) {
      out.grid_trace.insert(out.grid_trace.end(), run.trace.begin(), run.trace.end());
    }
    if (!have || run.value < best.value) {
      best = std::move(run);
      have = true;
    }
  }

  out.converged = all_converged;
  out.best_spec = spec_from_params(family, r, best.x, nth1, nth2);
  out.best_fidelity = closed_form_fidelity(out.best_spec, input);
  for (std::size_t i = 0; i < space.size(); ++i) {
    out.best_params.emplace_back(space[i].first, best.x[i]);
    if (best.x[i] - box[i].lo < 1e-9 || box[i].hi - best.x[i] < 1e-9) {
      out.at_box_edge.push_back(space[i].first);
    }
  }
  return out;
}

CollapseFit fit_truncated_twb(const ResourceSpec& ssf) {
  if (ssf.family != Family::SSF) throw std::invalid_argument("fit_truncated_twb: SSF spec required");
  const auto c = ssf.fock_coefficients();
  auto dist2 = [&](double s) {
    const double t = std::tanh(s);
    const double norm = std::sqrt(1.0 + t * t + t * t * t * t);
    const std::array<double, 3> v{1.0 / norm, t / norm, t * t / norm};
    double d = 0.0;
    for (int k = 0; k < 3; ++k) d += std::norm(c[k] - v[k]);
    return d;
  };
  // Coarse scan, then golden section around the best cell.
  const int cells = 300;
  const double hi = 3.0;
  int best = 0;
  double best_v = dist2(0.0);
  for (int i = 1; i <= cells; ++i) {
    const double v = dist2(hi * i / cells);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double lo_s = hi * std::max(0, best - 1) / cells;
  const double hi_s = hi * std::min(cells, best + 1) / cells;
  const auto [s, d2] = golden_section_min(dist2, lo_s, hi_s, 1e-12);
  return {s, std::sqrt(std::max(0.0, d2))};
}

CollapseFit verify_truncated_twb_collapse(const OptResult& opt) {
  return fit_truncated_twb(opt.best_spec);
}

TruncatedTwbOptimum optimize_truncated_twb(const InputSpec& input, double r, double nth1,
                                           double nth2, double s_hi) {
  auto neg = [&](double s) {
    return -closed_form_fidelity(ResourceSpec::truncated_twb(r, s).with_thermal(nth1, nth2), input);
  };
  const int cells = 400;
  int best = 0;
  double best_v = neg(0.0);
  for (int i = 1; i <= cells; ++i) {
    const double v = neg(s_hi * i / cells);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const auto [s, v] = golden_section_min(neg, s_hi * std::max(0, best - 1) / cells,
                                         s_hi * std::min(cells, best + 1) / cells, 1e-10);
  TruncatedTwbOptimum out;
  out.s_tilde = s;
  out.fidelity = -v;
  out.spec = ResourceSpec::truncated_twb(r, s).with_thermal(nth1, nth2);
  return out;
}

ThresholdResult classical_threshold(Family family, double r, double tol, const OptOptions& opts) {
  const InputSpec input = InputSpec::coherent({0.0, 0.0});
  auto excess = [&](double nth) {
    return optimize_resource(family, input, r, nth, nth, opts).best_fidelity - 0.5;
  };
  const double at_zero = excess(0.0);
  if (std::abs(at_zero) <= 1e-12) return {0.0, std::abs(at_zero), 0};
  if (at_zero < 0.0) {
    std::ostringstream msg;
    msg << "classical_threshold: optimal fidelity " << at_zero + 0.5 << " is below 1/2 at nth = 0";
    throw std::runtime_error(msg.str());
  }
  double lo = 0.0;
  double hi = 0.1;
  int iterations = 0;
  while (excess(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) throw std::runtime_error("classical_threshold: no sign change up to nth = 1e3");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  const double root = 0.5 * (lo + hi);
  return {root, std::abs(excess(root)), iterations};
}

}  // namespace cvtele
