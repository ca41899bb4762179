#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rlfgen/polynomial.h"

namespace rlfgen {

/// Sign condition of a polynomial against zero.
enum class Relation { kLt, kLe, kEq, kNe, kGt, kGe };

std::string to_string(Relation rel);
/// The relation satisfied exactly when `rel` is not.
Relation negate(Relation rel);
/// True iff a value with the given sign (-1, 0, 1) satisfies `rel`.
bool holds(Relation rel, int sign);

/// First-order formula over polynomial sign atoms. Formulas are immutable and
/// share subtrees; copying is cheap.
class Formula {
 public:
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kImplies, kForall, kExists };

  static Formula truth();
  static Formula falsity();
  /// `p rel 0`. A `!=` atom is built as the negation of an `=` atom.
  static Formula atom(Polynomial p, Relation rel);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> parts);
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula forall(std::vector<std::string> vars, Formula body);
  static Formula exists(std::vector<std::string> vars, Formula body);

  Formula() : Formula(truth()) {}

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::kAtom; }
  bool is_quantifier() const { return kind() == Kind::kForall || kind() == Kind::kExists; }
  /// Atom accessors.
  const Polynomial& polynomial() const;
  Relation relation() const;
  /// Children of not/and/or/implies (implies: lhs, rhs) and the body of a
  /// quantifier.
  const std::vector<Formula>& children() const;
  const Formula& body() const;
  const std::vector<std::string>& bound_variables() const;

  /// Structural equality.
  bool operator==(const Formula& other) const;

  std::string to_string() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Variables occurring free (names actually used by atoms, minus bound ones).
std::set<std::string> free_variables(const Formula& f);
/// Every variable name used by an atom, bound or free.
std::set<std::string> all_variables(const Formula& f);
bool is_quantifier_free(const Formula& f);
/// Number of atoms in the tree.
size_t atom_count(const Formula& f);
/// Largest total degree over all atoms (-1 when there are none).
int max_degree(const Formula& f);

/// Equivalent formula with constants folded, nested and/or flattened,
/// implications expanded, negations pushed into atoms (except that a negated
/// equation stays a negated equation), constant atoms decided, duplicate
/// children removed, and quantifiers over unused variables dropped.
Formula simplify(const Formula& f);

/// Replaces free occurrences of the bound names by rationals.
Formula substitute(const Formula& f, const Assignment& values);

/// Truth value of a quantifier-free formula; every free variable must be
/// bound in `point`.
bool evaluate(const Formula& f, const Assignment& point);

}  // namespace rlfgen
