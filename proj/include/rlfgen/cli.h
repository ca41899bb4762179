#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rlfgen/dynamics.h"
#include "rlfgen/rlfg.h"

namespace rlfgen {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  /// NoneForTemplate, a false verdict, or an invalid certificate.
  kExitNegative = 1,
  kExitUnknown = 2,
  kExitUsage = 3,
};

/// Contents of a system file:
///
///   {"vars": ["x", "y"],
///    "field": {"x": "-x + y^2", "y": "-x*y"},
///    "template": "x^2 + a*y^2",
///    "params": ["a"],
///    "config": {"mode": "grid", "grid": ["a:-2..2:1/2"], "radii": ["1"]}}
///
/// "template", "params" and "config" are optional. Recognized config keys:
/// mode, backend, grid, radii, radius, whole_space, max_order, budget_ms,
/// seed, solver.
struct SystemDefinition {
  VectorField field;
  std::optional<Template> templ;
  RlfgConfig config;
};

/// Throws Error on malformed JSON, undeclared variables, or a field that
/// does not list every state variable exactly once.
SystemDefinition parse_system(const std::string& json_text);
SystemDefinition load_system(const std::string& path);

/// The whole command line tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rlfgen
