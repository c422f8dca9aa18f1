#include "cvtele/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "cvtele/fock.hpp"
#include "cvtele/measures.hpp"
#include "cvtele/optimize.hpp"
#include "cvtele/states.hpp"
#include "cvtele/teleport.hpp"

namespace cvtele {

namespace {

struct Recipe {
  const char* name;
  const char* summary;
  std::vector<Family> families;
  bool both_inputs;
  Diagnostics diagnostics;
  std::vector<double> nth_grid;
};

const std::vector<Recipe>& recipes() {
  using F = Family;
  static const std::vector<Recipe> all{
      {"fig1", "optimal fidelity vs r for SSF, squeezed Bell and twin beam; coherent and |1> inputs",
       {F::TwB, F::SqueezedBell, F::SSF}, true, {}, {0.0}},
      {"fig2", "entanglement entropy of the optimized SSF, squeezed Bell and twin beam resources",
       {F::SSF, F::SqueezedBell, F::TwB}, true, {true, false, false, false}, {0.0}},
      {"fig3", "non-Gaussianity and squeezed-vacuum affinity of optimized SSF and squeezed Bell",
       {F::SSF, F::SqueezedBell}, true, {false, true, true, false}, {0.0}},
      {"fig4", "optimal fidelity vs r for twin beam, squeezed Bell and squeezed cat; coherent input",
       {F::TwB, F::SqueezedBell, F::SqueezedCat}, false, {}, {0.0}},
      {"fig5", "entropy, non-Gaussianity and affinity of optimized squeezed cat, twin beam, squeezed Bell",
       {F::SqueezedCat, F::TwB, F::SqueezedBell}, false, {true, true, true, false}, {0.0}},
      {"fig6", "optimal fidelity vs r with thermal noise nth1 = nth2 = nth",
       {F::SqueezedBell, F::SqueezedCat, F::TwB}, false, {}, {0.0, 0.05, 0.10, 0.15}},
      {"fig7", "classical threshold nth_cls(r) at which the optimal fidelity drops to 1/2",
       {F::SqueezedBell, F::SqueezedCat, F::TwB}, false, {false, false, false, true}, {0.0}},
  };
  return all;
}

const Recipe* find_recipe(const std::string& name) {
  for (const auto& r : recipes()) {
    if (name == r.name) return &r;
  }
  return nullptr;
}

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, int line, const std::string& why) const {
    throw ConfigError(fmt::format("{}:{}: {}: {}", source_, line, field, why), field, line);
  }

  double number(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(field, line_of(n), "expected a number");
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) fail(field, line_of(n), "must be finite");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(field, line_of(n), fmt::format("'{}' is not a number", n.Scalar()));
    }
  }

  std::string text(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(field, line_of(n), "expected a string");
    return n.Scalar();
  }

  cplx complex_value(const YAML::Node& n, const std::string& field) const {
    if (n.IsSequence()) {
      if (n.size() != 2) fail(field, line_of(n), "expected [re, im]");
      return {number(n[0], field), number(n[1], field)};
    }
    return {number(n, field), 0.0};
  }

  std::vector<double> grid(const YAML::Node& n, const std::string& field) const {
    std::vector<double> g;
    if (n.IsSequence()) {
      for (const auto& v : n) g.push_back(number(v, field));
    } else if (n.IsMap()) {
      check_keys(n, field, {"start", "stop", "step"});
      for (const char* k : {"start", "stop", "step"}) {
        if (!n[k]) fail(field + "." + k, line_of(n), "missing");
      }
      const double start = number(n["start"], field + ".start");
      const double stop = number(n["stop"], field + ".stop");
      const double step = number(n["step"], field + ".step");
      if (!(step > 0.0)) fail(field + ".step", line_of(n), "must be positive");
      const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
      if (count < 1 || count > 100000) fail(field, line_of(n), "range yields no points");
      for (long i = 0; i < count; ++i) g.push_back(start + i * step);
    } else {
      fail(field, line_of(n), "expected a list or {start, stop, step}");
    }
    if (g.empty()) fail(field, line_of(n), "must not be empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] < 0.0) fail(field, line_of(n), fmt::format("negative value {}", g[i]));
      if (i > 0 && !(g[i] > g[i - 1])) fail(field, line_of(n), "must be strictly increasing");
    }
    return g;
  }

  void check_keys(const YAML::Node& map, const std::string& where,
                  const std::set<std::string>& allowed) const {
    for (const auto& kv : map) {
      const std::string key = kv.first.Scalar();
      if (!allowed.count(key)) {
        const std::string field = where.empty() ? key : where + "." + key;
        fail(field, line_of(kv.first), "unknown key");
      }
    }
  }

 private:
  std::string source_;
};

std::vector<InputSpec> parse_inputs(const Parser& p, const YAML::Node& n) {
  std::string kind;
  cplx beta = 0.0;
  if (n.IsScalar()) {
    kind = n.Scalar();
  } else if (n.IsMap()) {
    p.check_keys(n, "input", {"kind", "beta"});
    if (!n["kind"]) p.fail("input.kind", line_of(n), "missing");
    kind = p.text(n["kind"], "input.kind");
    if (n["beta"]) beta = p.complex_value(n["beta"], "input.beta");
  } else {
    p.fail("input", line_of(n), "expected coherent, fock1, both or {kind, beta}");
  }
  if (kind == "both") return {InputSpec::coherent(beta), InputSpec::fock_one()};
  const auto k = parse_input(kind);
  if (!k) p.fail("input.kind", line_of(n), fmt::format("unknown input '{}'", kind));
  return {*k == InputKind::Coherent ? InputSpec::coherent(beta) : InputSpec::fock_one()};
}

ExplicitResource parse_resource(const Parser& p, const YAML::Node& n, std::size_t index) {
  const std::string where = fmt::format("resources[{}]", index);
  if (!n.IsMap()) p.fail(where, line_of(n), "expected a map");
  p.check_keys(n, where, {"family", "label", "delta", "delta2", "theta", "theta2", "gamma"});
  if (!n["family"]) p.fail(where + ".family", line_of(n), "missing");
  const std::string fam = p.text(n["family"], where + ".family");
  const auto f = parse_family(fam);
  if (!f) p.fail(where + ".family", line_of(n["family"]), fmt::format("unknown family '{}'", fam));
  ExplicitResource r;
  r.shape.family = *f;
  r.label = n["label"] ? p.text(n["label"], where + ".label") : std::string(family_name(*f));
  if (n["delta"]) r.shape.delta = p.number(n["delta"], where + ".delta");
  if (n["delta2"]) r.shape.delta2 = p.number(n["delta2"], where + ".delta2");
  if (n["theta"]) r.shape.theta = p.number(n["theta"], where + ".theta");
  if (n["theta2"]) r.shape.theta2 = p.number(n["theta2"], where + ".theta2");
  if (n["gamma"]) r.shape.gamma = p.complex_value(n["gamma"], where + ".gamma");
  return r;
}

Diagnostics parse_diagnostics(const Parser& p, const YAML::Node& n) {
  if (!n.IsSequence()) p.fail("diagnostics", line_of(n), "expected a list");
  Diagnostics d;
  for (const auto& v : n) {
    const std::string s = p.text(v, "diagnostics");
    if (s == "entropy") {
      d.entropy = true;
    } else if (s == "non_gaussianity") {
      d.non_gaussianity = true;
    } else if (s == "affinity") {
      d.affinity = true;
    } else if (s == "threshold") {
      d.threshold = true;
    } else {
      p.fail("diagnostics", line_of(v), fmt::format("unknown diagnostic '{}'", s));
    }
  }
  return d;
}

}  // namespace

std::vector<ExperimentInfo> list_experiments() {
  std::vector<ExperimentInfo> out;
  for (const auto& r : recipes()) out.push_back({r.name, r.summary});
  out.push_back({"custom", "user-chosen families, explicit resources, inputs and grids"});
  return out;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  const Parser p(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    p.fail("<syntax>", e.mark.line + 1, e.msg);
  }
  if (!root.IsMap()) p.fail("<root>", 1, "expected a map of settings");
  p.check_keys(root, "",
               {"experiment", "r_grid", "nth_grid", "input", "families", "resources",
                "quadrature_order", "output", "diagnostics"});

  ExperimentConfig c;
  if (!root["experiment"]) p.fail("experiment", 1, "missing");
  c.experiment = p.text(root["experiment"], "experiment");
  const Recipe* recipe = find_recipe(c.experiment);
  if (!recipe && c.experiment != "custom") {
    p.fail("experiment", line_of(root["experiment"]),
           fmt::format("unknown experiment '{}' (see list-experiments)", c.experiment));
  }

  if (root["r_grid"]) {
    c.r_grid = p.grid(root["r_grid"], "r_grid");
  } else if (recipe) {
    for (int i = 0; i <= 30; ++i) c.r_grid.push_back(i * 0.05);
  } else {
    p.fail("r_grid", 1, "missing (required for custom experiments)");
  }

  if (root["nth_grid"]) {
    c.nth_grid = p.grid(root["nth_grid"], "nth_grid");
  } else if (recipe) {
    c.nth_grid = recipe->nth_grid;
  }

  if (root["input"]) {
    c.inputs = parse_inputs(p, root["input"]);
  } else if (recipe) {
    c.inputs = {InputSpec::coherent(0.0)};
    if (recipe->both_inputs) c.inputs.push_back(InputSpec::fock_one());
  } else {
    p.fail("input", 1, "missing (required for custom experiments)");
  }

  if (root["families"]) {
    const YAML::Node n = root["families"];
    if (!n.IsSequence()) p.fail("families", line_of(n), "expected a list");
    for (const auto& v : n) {
      const std::string s = p.text(v, "families");
      const auto f = parse_family(s);
      if (!f) p.fail("families", line_of(v), fmt::format("unknown family '{}'", s));
      c.families.push_back(*f);
    }
  } else if (recipe) {
    c.families = recipe->families;
  }

  if (root["resources"]) {
    if (recipe) p.fail("resources", line_of(root["resources"]), "only allowed for custom experiments");
    const YAML::Node n = root["resources"];
    if (!n.IsSequence()) p.fail("resources", line_of(n), "expected a list");
    for (std::size_t i = 0; i < n.size(); ++i) c.resources.push_back(parse_resource(p, n[i], i));
  }
  if (c.families.empty() && c.resources.empty()) {
    p.fail("families", 1, "no families or resources to evaluate");
  }

  if (root["quadrature_order"]) {
    const YAML::Node n = root["quadrature_order"];
    const double q = p.number(n, "quadrature_order");
    if (q != std::floor(q) || q < 16 || q > 256) {
      p.fail("quadrature_order", line_of(n), "must be an integer in [16, 256]");
    }
    c.quadrature_order = static_cast<int>(q);
  }
  if (root["output"]) c.output = p.text(root["output"], "output");
  if (root["diagnostics"]) {
    c.diagnostics = parse_diagnostics(p, root["diagnostics"]);
  } else if (recipe) {
    c.diagnostics = recipe->diagnostics;
  }

  const bool has_fock =
      std::any_of(c.inputs.begin(), c.inputs.end(), [](const InputSpec& i) { return i.kind == InputKind::FockOne; });
  const bool has_cat =
      std::count(c.families.begin(), c.families.end(), Family::SqueezedCat) > 0 ||
      std::any_of(c.resources.begin(), c.resources.end(),
                  [](const ExplicitResource& r) { return r.shape.family == Family::SqueezedCat; });
  if (has_fock && has_cat) {
    p.fail("input", root["input"] ? line_of(root["input"]) : 1,
           "squeezed cat resources support coherent inputs only");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open file", path), "<file>", 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

namespace {

struct Task {
  Family family;
  InputSpec input;
  double r;
  double nth;
  const ExplicitResource* explicit_resource;  // null: optimize the family
};

std::string join_params(const std::vector<std::pair<std::string, double>>& kv) {
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += ';';
    s += fmt::format("{}={:.10g}", k, v);
  }
  return s;
}

SweepRow compute_row(const ExperimentConfig& c, const Task& t) {
  SweepRow row;
  row.experiment = c.experiment;
  row.family = t.family;
  row.input = t.input;
  row.r = t.r;
  row.nth1 = row.nth2 = t.nth;
  try {
    ResourceSpec spec;
    // Resource the state diagnostics describe; differs from spec only for optimized SSF rows.
    std::optional<ResourceSpec> diag_spec;
    std::vector<std::pair<std::string, double>> params;
    if (t.explicit_resource) {
      spec = t.explicit_resource->shape;
      spec.squeeze = SqueezeParam{t.r};
      spec = spec.with_thermal(t.nth, t.nth);
      switch (spec.family) {
        case Family::TwB:
          break;
        case Family::SqueezedBell:
          params = {{"delta", spec.delta}, {"theta", spec.theta}};
          break;
        case Family::SSF:
          params = {{"delta1", spec.delta}, {"theta_a", spec.theta}, {"delta2", spec.delta2},
                    {"theta_b", spec.theta2}};
          break;
        case Family::SqueezedCat:
          params = {{"delta", spec.delta}, {"theta", spec.theta}, {"gamma_re", spec.gamma.real()},
                    {"gamma_im", spec.gamma.imag()}};
          break;
      }
    } else {
      const OptResult opt = optimize_resource(t.family, t.input, t.r, t.nth, t.nth);
      spec = opt.best_spec;
      params = opt.best_params;
      if (t.family == Family::SSF) {
        const TruncatedTwbOptimum tt = optimize_truncated_twb(t.input, t.r, t.nth, t.nth);
        const CollapseFit fit = verify_truncated_twb_collapse(opt);
        params.emplace_back("s_tilde", tt.s_tilde);
        params.emplace_back("fidelity_ttwb", tt.fidelity);
        params.emplace_back("s_fit", fit.s_tilde);
        params.emplace_back("collapse_residual", fit.residual);
        diag_spec = tt.spec;
      }
      if (!opt.converged) params.emplace_back("optimizer_converged", 0.0);
    }
    row.params = join_params(params);
    if (t.explicit_resource) {
      row.params = "label=" + t.explicit_resource->label + (row.params.empty() ? "" : ";" + row.params);
    }

    row.fidelity_closed = closed_form_fidelity(spec, t.input);
    QuadratureOptions q;
    q.order = c.quadrature_order;
    q.refine_order = 2 * c.quadrature_order;
    const FidelityResult fq = fidelity_quadrature(spec, t.input, q);
    row.fidelity_quad = fq.value;
    row.quad_abs_err = fq.est_abs_error;

    const Diagnostics& d = c.diagnostics;
    const ResourceSpec& dspec = diag_spec ? *diag_spec : spec;
    if (dspec.pure() && (d.entropy || d.affinity || d.non_gaussianity)) {
      const TwoModeFockState fock = build_resource_fock_adaptive(dspec);
      if (d.entropy) row.entropy = von_neumann_entropy(fock);
      if (d.affinity) {
        const AffinityResult a = sv_affinity(fock, t.r + 2.0);
        row.affinity = a.value;
        row.xi_star = a.xi_star;
      }
      if (d.non_gaussianity) {
        row.non_gaussianity = non_gaussianity(chi_resource(dspec), moments_from_fock(fock), true).value;
      }
    }
    if (d.threshold && t.input.kind == InputKind::Coherent && !t.explicit_resource) {
      row.nth_cls = classical_threshold(t.family, t.r).nth;
    }
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

int worker_count(const RunOptions& opts) {
  if (opts.workers > 0) return opts.workers;
  if (const char* env = std::getenv("CVTELE_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::vector<SweepRow> run_experiment(const ExperimentConfig& c, const RunOptions& opts) {
  std::vector<Task> tasks;
  for (Family f : c.families) {
    for (const InputSpec& in : c.inputs) {
      for (double nth : c.nth_grid) {
        for (double r : c.r_grid) tasks.push_back({f, in, r, nth, nullptr});
      }
    }
  }
  for (const ExplicitResource& res : c.resources) {
    for (const InputSpec& in : c.inputs) {
      for (double nth : c.nth_grid) {
        for (double r : c.r_grid) tasks.push_back({res.shape.family, in, r, nth, &res});
      }
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      rows[i] = compute_row(c, tasks[i]);
    }
  };
  const int n = std::min<int>(worker_count(opts), static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  enforce_gate(rows);
  return rows;
}

void enforce_gate(const std::vector<SweepRow>& rows) {
  for (const SweepRow& r : rows) {
    if (!r.ok()) continue;
    const double diff = std::abs(r.fidelity_closed - r.fidelity_quad);
    if (diff <= kGateTolerance) continue;
    throw GateError(fmt::format(
        "closed-form/quadrature gate failed: family={} input={} r={} nth={} params={} closed={:.15g} "
        "quad={:.15g} |diff|={:.3g} > {:g}",
        family_name(r.family), input_name(r.input.kind), r.r, r.nth1, r.params, r.fidelity_closed,
        r.fidelity_quad, diff, kGateTolerance));
  }
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

std::string num(double v) { return fmt::format("{:.15g}", v); }
std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

void write_csv(std::ostream& out, const ExperimentConfig& c, const std::vector<SweepRow>& rows,
               const std::string& timestamp) {
  out << "# cvtele " << kToolVersion << "\n";
  out << "# generated: " << timestamp << "\n";
  out << "# experiment: " << c.experiment << "\n";
  out << "# squeezing: S(zeta) = exp(-zeta a1^dag a2^dag + conj(zeta) a1 a2), zeta = r e^{i phi}, phi = pi for every family\n";
  out << "# characteristic functions: symmetric ordering; thermal dressing exp(-nth |a|^2) per mode, nth1 = nth2 = nth\n";
  out << "# entropy: natural log (nats); quadratures x = (a + a^dag)/sqrt2, vacuum variance 1/2\n";
  out << "# cat search: delta = pi/4, theta = 0, real gamma\n";
  out << "# ssf rows: fidelity at the full optimum; s_tilde maximizes the truncated twin-beam fidelity, "
         "and E_vN, d_nG, affinity_G describe that truncated twin beam\n";
  out << "# quadrature: Gauss-Hermite order " << c.quadrature_order << ", refined at " << 2 * c.quadrature_order
      << "; gate |fidelity_closed - fidelity_quad| <= " << kGateTolerance << "\n";
  out << "experiment,family,input,beta_re,beta_im,r,nth1,nth2,params,fidelity_closed,fidelity_quad,"
         "quad_abs_err,E_vN,d_nG,affinity_G,xi_star,nth_cls,status,method,tool_version\n";
  for (const SweepRow& r : rows) {
    const bool ok = r.ok();
    const cplx beta = r.input.kind == InputKind::Coherent ? r.input.beta : cplx(0.0);
    out << csv_field(r.experiment) << ',' << family_name(r.family) << ',' << input_name(r.input.kind) << ','
        << num(beta.real()) << ',' << num(beta.imag()) << ',' << num(r.r) << ',' << num(r.nth1) << ','
        << num(r.nth2) << ',' << csv_field(r.params) << ',' << (ok ? num(r.fidelity_closed) : "") << ','
        << (ok ? num(r.fidelity_quad) : "") << ',' << (ok ? num(r.quad_abs_err) : "") << ','
        << num(r.entropy) << ',' << num(r.non_gaussianity) << ',' << num(r.affinity) << ','
        << num(r.xi_star) << ',' << num(r.nth_cls) << ',' << csv_field(r.status) << ','
        << "closed_form+quadrature" << ',' << kToolVersion << "\n";
  }
}

}  // namespace cvtele
