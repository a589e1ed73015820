// Batch driver for the W(a,b) verification suites.
//
// Exit codes: 0 when every verdict is PASS (and the --expect payload matches,
// if given), 1 when some verdict fails or the payload differs, 2 on usage or
// configuration errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "wab/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification suites for the Lie algebras W(a,b)"};

  std::string config_path, command, a_str, b_str, format, out_path, expect_path;
  int radius = 0, margin = 0, k_min = 0, k_max = 0;

  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--command", command, "jacobi|derivations|biderivations|classify|postlie|full");
  app.add_option("--a", a_str, "parameter a, e.g. 1/3 or 1/2+1/4i");
  app.add_option("--b", b_str, "parameter b");
  auto* radius_opt = app.add_option("--radius", radius, "window radius");
  auto* margin_opt = app.add_option("--margin", margin, "interior certification margin");
  auto* kmin_opt = app.add_option("--k-min", k_min, "smallest degree shift");
  auto* kmax_opt = app.add_option("--k-max", k_max, "largest degree shift");
  app.add_option("--format", format, "text|machine");
  app.add_option("--out", out_path, "write the report to this path");
  app.add_option("--expect", expect_path,
                 "compare the comparable payload against this golden file");

  CLI11_PARSE(app, argc, argv);

  try {
    wab::RunConfig cfg;
    if (!config_path.empty()) cfg = wab::parse_config(read_file(config_path));
    if (!command.empty()) cfg.command = wab::parse_command(command);
    if (a_str.empty() != b_str.empty())
      throw wab::validation_error("--a and --b must be given together");
    if (!a_str.empty())
      cfg.grid = {wab::Params{wab::parse_scalar(a_str), wab::parse_scalar(b_str)}};
    if (radius_opt->count()) cfg.radius = radius;
    if (margin_opt->count()) cfg.interior_margin = margin;
    if (kmin_opt->count()) cfg.k_min = k_min;
    if (kmax_opt->count()) cfg.k_max = k_max;
    if (!format.empty()) cfg.format = wab::parse_format(format);
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!expect_path.empty()) cfg.expect_path = expect_path;
    wab::validate_config(cfg);

    wab::RunOutcome outcome = wab::run(cfg);
    if (!cfg.output_path) std::cout << outcome.report.full_text();
    if (outcome.expect_mismatch)
      std::cerr << "wabtool: report payload differs from " << *cfg.expect_path << "\n";
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "wabtool: " << e.what() << "\n";
    return 2;
  }
}
