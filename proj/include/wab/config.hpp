#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wab/algebra.hpp"

namespace wab {

enum class Command { jacobi, derivations, biderivations, classify, postlie, full };
enum class ReportFormat { text, machine };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::jacobi: return "jacobi";
    case Command::derivations: return "derivations";
    case Command::biderivations: return "biderivations";
    case Command::classify: return "classify";
    case Command::postlie: return "postlie";
    case Command::full: return "full";
  }
  return "?";
}

inline Command parse_command(std::string_view s) {
  for (Command c : {Command::jacobi, Command::derivations, Command::biderivations,
                    Command::classify, Command::postlie, Command::full})
    if (s == command_name(c)) return c;
  throw parse_error("unknown command: '" + std::string(s) + "'");
}

inline ReportFormat parse_format(std::string_view s) {
  if (s == "text") return ReportFormat::text;
  if (s == "machine") return ReportFormat::machine;
  throw parse_error("unknown format: '" + std::string(s) + "'");
}

struct RunConfig {
  Command command = Command::full;
  std::vector<Params> grid;             // empty means the default grid
  std::optional<int> radius;            // per-suite defaults when unset
  std::optional<int> interior_margin;
  int k_min = -4;
  int k_max = 4;
  ReportFormat format = ReportFormat::text;
  std::optional<std::string> output_path;
  std::optional<std::string> expect_path;  // golden payload to compare against
};

/// The 13-point parameter grid covering every classification branch with an
/// integer-a and a non-integer-a representative where meaningful.
inline std::vector<Params> default_grid() {
  auto P = [](const char* a, const char* b) {
    return Params{parse_scalar(a), parse_scalar(b)};
  };
  return {P("0", "0"),  P("1", "0"),   P("1/2", "0"),  P("0", "1"),    P("2", "1"),
          P("1/2", "1"), P("0", "-1"), P("2", "-1"),   P("1/2", "-1"), P("0", "2"),
          P("3", "2"),   P("1/3", "5/2"), P("1/2", "3")};
}

/// Suite-level defaults: the Jacobi and derivation suites run on a radius-8
/// window, the biderivation-based suites on radius 6 with margin 2.
inline int resolved_radius(const RunConfig& cfg, Command suite) {
  if (cfg.radius) return *cfg.radius;
  return (suite == Command::jacobi || suite == Command::derivations) ? 8 : 6;
}

inline int resolved_margin(const RunConfig& cfg, Command suite) {
  if (cfg.interior_margin) return *cfg.interior_margin;
  return suite == Command::derivations ? 3 : 2;
}

inline void validate_config(const RunConfig& cfg) {
  if (cfg.radius && *cfg.radius < 1) throw validation_error("radius must be positive");
  if (cfg.interior_margin && *cfg.interior_margin < 0)
    throw validation_error("interior margin must be >= 0");
  if (cfg.radius && cfg.interior_margin && *cfg.radius < *cfg.interior_margin + 2)
    throw validation_error("radius must be at least interior_margin + 2");
  if (cfg.k_min > cfg.k_max) throw validation_error("k_min must not exceed k_max");
}

/// Flat key-value config text: one `key = value` per line, '#' comments.
/// Recognized keys: command, a, b, point (repeatable "a, b"), radius, margin,
/// k_min, k_max, format, out, expect.
inline RunConfig parse_config(const std::string& source) {
  RunConfig cfg;
  std::optional<Scalar> a, b;
  std::vector<Params> points;
  std::size_t line_no = 0, pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    std::string_view line(source.data() + pos,
                          (eol == std::string::npos ? source.size() : eol) - pos);
    pos = eol == std::string::npos ? source.size() + 1 : eol + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw parse_error("line " + std::to_string(line_no) + ": expected key = value");
    std::string_view key = detail::trim(line.substr(0, eq));
    std::string_view value = detail::trim(line.substr(eq + 1));
    auto as_int = [&](std::string_view v) {
      Rational r = parse_rational(v);
      if (denominator(r) != 1)
        throw parse_error("line " + std::to_string(line_no) + ": expected an integer");
      return numerator(r).convert_to<int>();
    };
    try {
      if (key == "command") {
        cfg.command = parse_command(value);
      } else if (key == "a") {
        a = parse_scalar(value);
      } else if (key == "b") {
        b = parse_scalar(value);
      } else if (key == "point") {
        std::size_t comma = value.find(',');
        if (comma == std::string_view::npos) throw parse_error("point needs 'a, b'");
        points.push_back(Params{parse_scalar(value.substr(0, comma)),
                                parse_scalar(value.substr(comma + 1))});
      } else if (key == "radius") {
        cfg.radius = as_int(value);
      } else if (key == "margin") {
        cfg.interior_margin = as_int(value);
      } else if (key == "k_min") {
        cfg.k_min = as_int(value);
      } else if (key == "k_max") {
        cfg.k_max = as_int(value);
      } else if (key == "format") {
        cfg.format = parse_format(value);
      } else if (key == "out") {
        cfg.output_path = std::string(value);
      } else if (key == "expect") {
        cfg.expect_path = std::string(value);
      } else {
        throw parse_error("unknown key '" + std::string(key) + "'");
      }
    } catch (const parse_error& e) {
      throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (a.has_value() != b.has_value())
    throw parse_error("'a' and 'b' must be given together");
  if (a) points.push_back(Params{*a, *b});
  cfg.grid = std::move(points);
  validate_config(cfg);
  return cfg;
}

}  // namespace wab
