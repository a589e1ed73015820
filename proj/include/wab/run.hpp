#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wab/config.hpp"
#include "wab/linmap.hpp"
#include "wab/postlie.hpp"

namespace wab {

/// A finished run. The comparable payload is byte-deterministic for a given
/// config; timing lives outside it so golden comparisons stay stable.
struct Report {
  std::string comparable;
  std::string timing;
  bool all_pass = false;

  std::string full_text() const { return comparable + timing; }
};

struct RunOutcome {
  Report report;
  bool expect_mismatch = false;
  int exit_code = 1;
};

namespace detail {

struct SuiteBlock {
  bool pass = false;
  std::vector<std::string> machine;  // fixed field order, one row per line
  std::vector<std::string> text;
};

inline std::string where_list(const std::vector<BasisVector>& ws) {
  std::string s = "(";
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) s += ",";
    s += to_string(ws[i]);
  }
  return s + ")";
}

inline SuiteBlock jacobi_suite(const Params& p, const RunConfig& cfg) {
  const int R = resolved_radius(cfg, Command::jacobi);
  std::size_t triples = 0, nonzero = 0;
  std::string first_bad;
  const std::vector<BasisVector> basis = window_basis(R);
  for (const BasisVector x : basis)
    for (const BasisVector y : basis)
      for (const BasisVector z : basis) {
        ++triples;
        Element r = check_jacobi(p, Element::basis(x), Element::basis(y), Element::basis(z));
        if (!r.is_zero()) {
          if (nonzero == 0) first_bad = where_list({x, y, z});
          ++nonzero;
        }
      }
  SuiteBlock out;
  out.pass = nonzero == 0;
  std::string verdict = out.pass ? "PASS" : "FAIL";
  out.machine.push_back("suite jacobi radius=" + std::to_string(R) +
                        " triples=" + std::to_string(triples) +
                        " nonzero=" + std::to_string(nonzero) + " verdict=" + verdict);
  out.text.push_back("jacobi (R=" + std::to_string(R) + "): " + verdict + "  [" +
                     std::to_string(triples) + " triples, " + std::to_string(nonzero) +
                     " nonzero residuals" + (first_bad.empty() ? "" : ", first at " + first_bad) +
                     "]");
  return out;
}

inline SuiteBlock derivations_suite(const Params& p, const RunConfig& cfg) {
  const int R = resolved_radius(cfg, Command::derivations);
  const int margin = resolved_margin(cfg, Command::derivations);
  const Params normalized = normalize_params(p);
  SuiteBlock out;
  out.pass = true;
  std::vector<std::string> rows_m, rows_t;
  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    DerivationSolveReport rep = solve_derivations(normalized, k, R, margin);
    const int expected = expected_derivation_dimension(normalized, k);
    bool row_ok = rep.certified_dimension == expected;
    std::string members;
    if (k == 0) {
      std::size_t found = 0;
      auto canon = applicable_canonical_derivations(normalized);
      for (CanonicalDerivation d : canon)
        if (in_solution_space(rep, canonical_derivation(d, R))) ++found;
      members = std::to_string(found) + "/" + std::to_string(canon.size());
      row_ok = row_ok && found == canon.size();
    }
    out.pass = out.pass && row_ok;
    rows_m.push_back("der k=" + std::to_string(k) + " raw=" + std::to_string(rep.raw_dimension) +
                     " certified=" + std::to_string(rep.certified_dimension) +
                     " expected=" + std::to_string(expected) +
                     (members.empty() ? "" : " members=" + members));
    rows_t.push_back("  k=" + std::to_string(k) + ": certified " +
                     std::to_string(rep.certified_dimension) + " (expected " +
                     std::to_string(expected) + ")" +
                     (members.empty() ? "" : ", canonical members " + members));
  }
  std::string verdict = out.pass ? "PASS" : "FAIL";
  std::string norm = normalized.a == p.a ? "" : " a_normalized=" + to_string(normalized.a);
  out.machine.push_back("suite derivations radius=" + std::to_string(R) +
                        " margin=" + std::to_string(margin) + norm + " verdict=" + verdict);
  out.machine.insert(out.machine.end(), rows_m.begin(), rows_m.end());
  out.text.push_back("derivations (R=" + std::to_string(R) + ", margin=" +
                     std::to_string(margin) +
                     (norm.empty() ? std::string() : ", a normalized to " + to_string(normalized.a)) +
                     "): " + verdict);
  out.text.insert(out.text.end(), rows_t.begin(), rows_t.end());
  return out;
}

inline SuiteBlock biderivations_suite(const Params& p, const RunConfig& cfg, bool full_classify) {
  const Command suite = full_classify ? Command::classify : Command::biderivations;
  const int R = resolved_radius(cfg, suite);
  const int margin = resolved_margin(cfg, suite);
  ClassificationVerdict v = classify(p, cfg.k_min, cfg.k_max, R, margin);
  SuiteBlock out;
  out.pass = true;
  const char* name = full_classify ? "classify" : "biderivations";
  std::vector<std::string> rows_m, rows_t;
  for (const ClassificationRow& row : v.rows) {
    bool row_ok = full_classify ? row.pass
                                : row.certified_dimension == row.expected_dimension;
    out.pass = out.pass && row_ok;
    std::string families;
    for (std::size_t i = 0; i < row.family_labels.size(); ++i)
      families += (i ? "," : "") + row.family_labels[i];
    if (families.empty()) families = "-";
    rows_m.push_back(std::string("bid k=") + std::to_string(row.k) +
                     " raw=" + std::to_string(row.raw_dimension) +
                     " certified=" + std::to_string(row.certified_dimension) +
                     " expected=" + std::to_string(row.expected_dimension) +
                     " families=" + families + " residual=" + to_string(row.family_residual));
    rows_t.push_back("  k=" + std::to_string(row.k) + ": dim " +
                     std::to_string(row.certified_dimension) + " (expected " +
                     std::to_string(row.expected_dimension) + "), span {" +
                     (families == "-" ? "" : families) + "}, residual " +
                     to_string(row.family_residual));
  }
  std::string verdict = out.pass ? "PASS" : "FAIL";
  out.machine.push_back(std::string("suite ") + name + " radius=" + std::to_string(R) +
                        " margin=" + std::to_string(margin) + " verdict=" + verdict);
  out.machine.insert(out.machine.end(), rows_m.begin(), rows_m.end());
  out.text.push_back(std::string(name) + " (R=" + std::to_string(R) + ", margin=" +
                     std::to_string(margin) + "): " + verdict);
  out.text.insert(out.text.end(), rows_t.begin(), rows_t.end());
  return out;
}

inline SuiteBlock postlie_suite(const Params& p, const RunConfig& cfg) {
  const int R = resolved_radius(cfg, Command::postlie);
  const int margin = resolved_margin(cfg, Command::postlie);
  TrivialityVerdict v = triviality_sweep(p, cfg.k_min, cfg.k_max, R, margin);
  SuiteBlock out;
  out.pass = v.pass;
  std::string verdict = out.pass ? "PASS" : "FAIL";
  out.machine.push_back("suite postlie radius=" + std::to_string(R) +
                        " classification=" + (v.classification.pass ? "PASS" : "FAIL") +
                        " verdict=" + verdict);
  out.text.push_back("post-Lie triviality (R=" + std::to_string(R) + "): " + verdict);
  for (const DirectionExclusion& row : v.rows) {
    out.machine.push_back(
        "dir k=" + std::to_string(row.k) + " label=" + row.label +
        " axiom=" + axiom_name(row.witness.axiom) + " at=" + where_list(row.witness.where) +
        " excluded=" + (row.excluded ? "yes" : "no"));
    out.text.push_back("  k=" + std::to_string(row.k) + " " + row.label + ": " +
                       (row.excluded ? "excluded" : "NOT excluded") + " by " +
                       axiom_name(row.witness.axiom) + " at " + where_list(row.witness.where));
  }
  return out;
}

struct PointResult {
  Params params;
  bool pass = true;
  std::vector<SuiteBlock> suites;
};

inline PointResult run_point(const Params& p, const RunConfig& cfg) {
  PointResult out;
  out.params = p;
  std::vector<Command> suites;
  if (cfg.command == Command::full)
    suites = {Command::jacobi, Command::derivations, Command::classify, Command::postlie};
  else
    suites = {cfg.command};
  for (Command c : suites) {
    SuiteBlock block;
    try {
      switch (c) {
        case Command::jacobi: block = jacobi_suite(p, cfg); break;
        case Command::derivations: block = derivations_suite(p, cfg); break;
        case Command::biderivations: block = biderivations_suite(p, cfg, false); break;
        case Command::classify: block = biderivations_suite(p, cfg, true); break;
        case Command::postlie: block = postlie_suite(p, cfg); break;
        case Command::full: break;
      }
    } catch (const std::exception& e) {
      block.pass = false;
      block.machine = {std::string("suite ") + command_name(c) + " verdict=FAIL error=" + e.what()};
      block.text = {std::string(command_name(c)) + ": FAIL (" + e.what() + ")"};
    }
    out.pass = out.pass && block.pass;
    out.suites.push_back(std::move(block));
  }
  return out;
}

}  // namespace detail

inline int worker_count_from_env() {
  const char* env = std::getenv("WAB_WORKERS");
  if (!env) return 1;
  int n = std::atoi(env);
  if (n < 1) return 1;
  return n > 64 ? 64 : n;
}

/// Executes the configured suites over the grid. Grid points may be computed
/// by a worker pool (WAB_WORKERS); assembly order is always the grid order,
/// so the comparable payload is deterministic.
inline RunOutcome run(const RunConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Params> grid = cfg.grid.empty() ? default_grid() : cfg.grid;
  const int workers = worker_count_from_env();

  std::vector<detail::PointResult> results(grid.size());
  if (workers <= 1 || grid.size() <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) results[i] = detail::run_point(grid[i], cfg);
  } else {
    std::atomic<std::size_t> next{0};
    auto body = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= grid.size()) return;
        results[i] = detail::run_point(grid[i], cfg);
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(workers, static_cast<int>(grid.size()));
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
  }

  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;

  std::ostringstream os;
  const bool machine = cfg.format == ReportFormat::machine;
  if (machine) {
    os << "wab.report.v1\n";
    os << "config command=" << command_name(cfg.command) << " k_min=" << cfg.k_min
       << " k_max=" << cfg.k_max << " radius="
       << (cfg.radius ? std::to_string(*cfg.radius) : "default") << " margin="
       << (cfg.interior_margin ? std::to_string(*cfg.interior_margin) : "default")
       << " grid=" << grid.size() << "\n";
    for (const auto& r : results) {
      os << "point a=" << to_string(r.params.a) << " b=" << to_string(r.params.b) << "\n";
      for (const auto& s : r.suites)
        for (const std::string& line : s.machine) os << line << "\n";
      os << "end point\n";
    }
    os << "summary points=" << grid.size() << " pass=" << passed
       << " fail=" << grid.size() - passed << "\n";
    os << "end wab.report.v1\n";
  } else {
    os << "W(a,b) verification report — command " << command_name(cfg.command) << "\n";
    for (const auto& r : results) {
      os << "\n== W(a=" << to_string(r.params.a) << ", b=" << to_string(r.params.b)
         << ") == " << (r.pass ? "PASS" : "FAIL") << "\n";
      for (const auto& s : r.suites)
        for (const std::string& line : s.text) os << line << "\n";
    }
    os << "\noverall: " << passed << "/" << grid.size() << " grid points pass\n";
  }

  RunOutcome outcome;
  outcome.report.comparable = os.str();
  outcome.report.all_pass = passed == grid.size();

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  outcome.report.timing = (machine ? "timing total_ms=" : "timing: total ms ") +
                          std::to_string(ms) + (machine ? " workers=" : ", workers ") +
                          std::to_string(workers) + "\n";

  if (cfg.expect_path) {
    std::ifstream in(*cfg.expect_path);
    if (!in) throw std::runtime_error("cannot read expected payload: " + *cfg.expect_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    outcome.expect_mismatch = buf.str() != outcome.report.comparable;
  }

  if (cfg.output_path) {
    std::ofstream outf(*cfg.output_path);
    if (!outf) throw std::runtime_error("cannot open output path: " + *cfg.output_path);
    outf << outcome.report.full_text();
  }

  outcome.exit_code = outcome.report.all_pass && !outcome.expect_mismatch ? 0 : 1;
  return outcome;
}

}  // namespace wab
