// cvtele: batch runner for teleportation-fidelity sweeps.
//
//   cvtele run <config.yaml>       compute the sweep, write CSV to `output` (or stdout)
//   cvtele validate <config.yaml>  parse and check a config, print the resolved settings
//   cvtele list-experiments
//
// Exit codes: 0 ok, 1 usage, 2 config, 3 compute, 4 closed-form/quadrature gate.
// CVTELE_WORKERS sets the number of worker threads.

#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cvtele/experiment.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kConfig = 2, kCompute = 3, kGate = 4 };

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  return s.str();
}

void print_config(const cvtele::ExperimentConfig& c) {
  using namespace cvtele;
  std::cout << "experiment: " << c.experiment << "\n";
  std::cout << "r_grid: [" << join(c.r_grid) << "] (" << c.r_grid.size() << " points)\n";
  std::cout << "nth_grid: [" << join(c.nth_grid) << "]\n";
  std::cout << "inputs:";
  for (const auto& in : c.inputs) {
    std::cout << " " << input_name(in.kind);
    if (in.kind == InputKind::Coherent) std::cout << "(beta=" << in.beta.real() << "+" << in.beta.imag() << "i)";
  }
  std::cout << "\nfamilies:";
  for (auto f : c.families) std::cout << " " << family_name(f);
  for (const auto& r : c.resources) std::cout << " " << r.label << "[" << family_name(r.shape.family) << "]";
  std::cout << "\nquadrature_order: " << c.quadrature_order << "\n";
  std::cout << "diagnostics:" << (c.diagnostics.entropy ? " entropy" : "")
            << (c.diagnostics.non_gaussianity ? " non_gaussianity" : "")
            << (c.diagnostics.affinity ? " affinity" : "") << (c.diagnostics.threshold ? " threshold" : "")
            << "\n";
  std::cout << "output: " << (c.output.empty() ? "<stdout>" : c.output) << "\n";
}

int run(const std::string& path) {
  cvtele::ExperimentConfig config;
  try {
    config = cvtele::load_config(path);
  } catch (const cvtele::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }

  std::vector<cvtele::SweepRow> rows;
  try {
    rows = cvtele::run_experiment(config);
  } catch (const cvtele::GateError& e) {
    std::cerr << e.what() << "\n";
    return kGate;
  } catch (const std::exception& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return kCompute;
  }

  const std::string stamp = utc_timestamp();
  if (config.output.empty()) {
    cvtele::write_csv(std::cout, config, rows, stamp);
  } else {
    std::ofstream out(config.output);
    if (!out) {
      std::cerr << "cannot write " << config.output << "\n";
      return kCompute;
    }
    cvtele::write_csv(out, config, rows, stamp);
  }

  int failed = 0;
  for (const auto& r : rows) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "row failed: " << cvtele::family_name(r.family) << " " << cvtele::input_name(r.input.kind)
                << " r=" << r.r << " nth=" << r.nth1 << ": " << r.status << "\n";
    }
  }
  std::cerr << rows.size() << " rows";
  if (!config.output.empty()) std::cerr << " written to " << config.output;
  std::cerr << (failed ? ", " + std::to_string(failed) + " failed" : std::string()) << "\n";
  return failed ? kCompute : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation fidelity sweeps with Gaussian and non-Gaussian resources"};
  app.set_version_flag("--version", std::string(cvtele::kToolVersion));
  app.require_subcommand(1);

  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment config and write CSV");
  run_cmd->add_option("config", run_path, "YAML config file")->required();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config and print the resolved settings");
  validate_cmd->add_option("config", validate_path, "YAML config file")->required();

  auto* list_cmd = app.add_subcommand("list-experiments", "List the built-in experiment recipes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*run_cmd) return run(run_path);
  if (*validate_cmd) {
    try {
      print_config(cvtele::load_config(validate_path));
      return kOk;
    } catch (const cvtele::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kConfig;
    }
  }
  if (*list_cmd) {
    for (const auto& e : cvtele::list_experiments()) std::cout << e.name << "\t" << e.summary << "\n";
    return kOk;
  }
  return kUsage;
}
