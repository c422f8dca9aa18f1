#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvtele/resource.hpp"

namespace cvtele {

inline constexpr const char* kToolVersion = "0.1.0";

/// Closed form and quadrature must agree this well on every emitted row.
inline constexpr double kGateTolerance = 1e-6;

/// Bad configuration. what() carries "<source>:<line>: <field>: <reason>".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field, int line)
      : std::runtime_error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// A row whose closed-form and quadrature fidelities disagree beyond kGateTolerance.
class GateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Diagnostics {
  bool entropy = false;
  bool non_gaussianity = false;
  bool affinity = false;
  bool threshold = false;
};

/// A resource given explicitly in a custom config. Its r and thermal numbers
/// come from the grids; the shape fields (delta, theta, gamma, ...) are fixed.
struct ExplicitResource {
  ResourceSpec shape;
  std::string label;
};

struct ExperimentConfig {
  std::string experiment;  // fig1..fig7 or custom
  std::vector<double> r_grid;
  std::vector<double> nth_grid{0.0};
  std::vector<InputSpec> inputs;
  std::vector<Family> families;
  std::vector<ExplicitResource> resources;
  int quadrature_order = 64;
  std::string output;  // empty: standard output
  Diagnostics diagnostics;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
};

std::vector<ExperimentInfo> list_experiments();

/// Parses, defaults and validates a YAML config. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

struct SweepRow {
  std::string experiment;
  Family family = Family::TwB;
  InputSpec input;
  double r = 0.0;
  double nth1 = 0.0;
  double nth2 = 0.0;
  /// "name=value" pairs joined by ';'.
  std::string params;
  double fidelity_closed = 0.0;
  double fidelity_quad = 0.0;
  double quad_abs_err = 0.0;
  std::optional<double> entropy;
  std::optional<double> non_gaussianity;
  std::optional<double> affinity;
  std::optional<double> xi_star;
  std::optional<double> nth_cls;
  std::string status = "ok";
  bool ok() const { return status == "ok"; }
};

struct RunOptions {
  /// 0: CVTELE_WORKERS if set, else hardware concurrency.
  int workers = 0;
};

/// Computes every row of the sweep in deterministic grid order. Per-row
/// failures are recorded in SweepRow::status; a gate violation throws
/// GateError naming the offending parameters.
std::vector<SweepRow> run_experiment(const ExperimentConfig& config, const RunOptions& opts = {});

/// Throws GateError for the first successful row whose closed-form and
/// quadrature fidelities differ by more than kGateTolerance.
void enforce_gate(const std::vector<SweepRow>& rows);

/// CSV with a '#' metadata header. Only the "# generated:" line depends on `timestamp`.
void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<SweepRow>& rows,
               const std::string& timestamp);

}  // namespace cvtele
