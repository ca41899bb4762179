#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlfgen/formula.h"

namespace rlfgen {

enum class Truth { kTrue, kFalse, kUnknown };
std::string to_string(Truth t);

/// Decision backend: the exact cylindrical decomposition, an external SMT
/// solver, or the decomposition with the solver as fallback.
enum class Backend { kCad, kSmt, kAuto };
std::string to_string(Backend b);
/// Parses "cad", "smt" or "auto".
Backend parse_backend(const std::string& name);

/// Why a verdict is Unknown.
enum class UnknownReason {
  kNone,
  /// The time budget ran out.
  kTimeout,
  /// Too many variables or too high a degree for the exact backend.
  kEnvelope,
  /// The solution set is not a union of sign conditions on the computed
  /// projection factors.
  kNotDefinable,
  /// No solver executable was found.
  kSolverUnavailable,
  /// The solver answered unknown or failed.
  kSolverUnknown,
};
std::string to_string(UnknownReason r);

/// External solver invocation. An empty path means the RLFGEN_SMT_SOLVER
/// environment variable, or "z3" on the PATH.
struct SolverConfig {
  std::string path;
  std::vector<std::string> args{"-in", "-smt2"};
};

struct QeConfig {
  Backend backend = Backend::kAuto;
  size_t max_variables = 4;
  int max_degree = 8;
  std::chrono::milliseconds budget{30000};
  SolverConfig solver;
};

struct Verdict {
  Truth truth = Truth::kUnknown;
  UnknownReason reason = UnknownReason::kNone;
  /// "cad", "smt" or "simplifier".
  std::string backend;
  std::string detail;
};

/// Truth of a closed formula. Throws Error when f has free variables.
Verdict decide_closed(const Formula& f, const QeConfig& config = {});

struct QeResult {
  enum class Kind { kQuantifierFree, kTrue, kFalse, kUnknown };
  Kind kind = Kind::kUnknown;
  /// Equivalent quantifier-free formula over the kept variables (also set
  /// to true/false for the constant kinds).
  Formula formula;
  UnknownReason reason = UnknownReason::kNone;
  std::string detail;
};

/// Eliminates every quantifier of f with the exact backend. The free
/// variables of f must be among `keep_free`.
QeResult qe(const Formula& f, const std::vector<std::string>& keep_free, const QeConfig& config = {});

struct Witness {
  enum class Status { kFound, kNone, kNonRationalizable, kUnknown };
  Status status = Status::kUnknown;
  /// Values for the free variables and the leading existential variables.
  Assignment point;
  UnknownReason reason = UnknownReason::kNone;
  std::string detail;
};

/// A rational point satisfying a quantifier-free or existential formula,
/// preferring small denominators, then small numerators.
Witness find_witness(const Formula& f, const QeConfig& config = {});

struct FalsifierOptions {
  std::uint64_t seed = 1;
  /// Grid points per half-axis; the grid is {0, +-jR/steps}.
  unsigned grid_steps = 4;
  size_t random_samples = 2000;
  /// Sampling radius R. When absent it is read from a ball atom
  /// x1^2 + ... + xn^2 - c < 0 over the bound variables, else 2.
  std::optional<Rational> radius;
};

/// A rational point violating the body of a closed universal formula, found
/// by grid and random sampling. Every hit is re-checked exactly.
std::optional<Assignment> falsify_universal(const Formula& f, const FalsifierOptions& options = {});

/// Whether the configured solver can be started.
bool solver_available(const SolverConfig& config);
/// Decides a closed formula with the external solver.
Verdict smt_decide(const Formula& f, const SolverConfig& config, std::chrono::milliseconds budget);

}  // namespace rlfgen
