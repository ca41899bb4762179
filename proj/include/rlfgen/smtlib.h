#pragma once

#include <string>

#include "rlfgen/formula.h"

namespace rlfgen {

/// SMT-LIB2 logic tag. QF_NRA scripts must be quantifier-free and their free
/// variables are read existentially; NRA scripts may contain quantifiers.
enum class SmtLogic { kQfNra, kNra };

std::string to_string(SmtLogic logic);

/// Polynomial as an SMT-LIB2 term with exact rational literals, e.g.
/// (* (/ 1 2) x).
std::string to_smtlib_term(const Polynomial& p);

/// The formula as an SMT-LIB2 term.
std::string to_smtlib_formula(const Formula& f);

/// Complete script: set-logic, one declare-const per free variable, a single
/// assertion of `f`, and check-sat.
std::string to_smtlib(const Formula& f, SmtLogic logic);

}  // namespace rlfgen
