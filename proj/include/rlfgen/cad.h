#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rlfgen/formula.h"
#include "rlfgen/real_algebraic.h"

namespace rlfgen {

/// Renames variables simultaneously; names mapped onto the same target are
/// identified.
Polynomial rename_variables(const Polynomial& p, const std::map<std::string, std::string>& names);

struct QuantifierBlock {
  bool universal;
  std::vector<std::string> variables;
};

/// Q1 v1 ... Qk vk. matrix, with a quantifier-free matrix in negation normal
/// form (negated equations allowed).
struct PrenexForm {
  std::vector<QuantifierBlock> prefix;
  Formula matrix;
};

/// Prenex form of f. Bound variables are renamed apart from each other and
/// from the free variables. Universal blocks of conjuncts and existential
/// blocks of disjuncts share variables, which keeps the variable count low.
PrenexForm prenex(const Formula& f);
Formula from_prenex(const PrenexForm& p);

/// Orders a block of variables for projection: the variable projected first
/// (lowest degree, then lowest total degree of terms containing it, then
/// fewest such terms) is placed last.
std::vector<std::string> order_block(std::vector<std::string> vars,
                                     const std::vector<Polynomial>& polys);

/// Projection factors grouped by main variable. Factors at each level are
/// primitive, squarefree and pairwise coprime. Each factor contributes its
/// leading and trailing coefficients and discriminant, each pair its
/// resultant; factors that vanish identically over a sample are lifted
/// through their Lazard evaluation.
struct ProjectionSet {
  Ring ring;
  std::vector<std::vector<Polynomial>> levels;
};

ProjectionSet project(const Ring& ring, const std::vector<Polynomial>& polys,
                      const Deadline* deadline = nullptr);

/// One cell of a full decomposition: its sample point and the signs of
/// every projection factor at that point.
struct CadCell {
  SamplePoint sample;
  /// signs[level][i] is the sign of levels[level][i].
  std::vector<std::vector<int>> signs;
  /// Per level, whether the cell is a section in that coordinate.
  std::vector<bool> section;
};

/// Every cell of the decomposition induced by a projection set.
std::vector<CadCell> decompose(const ProjectionSet& projection, const Deadline* deadline = nullptr);

/// A prenex problem laid out for cylindrical decomposition: the ring lists
/// the free variables first, then the bound ones in quantifier order.
struct CadProblem {
  Ring ring;
  size_t free_count = 0;
  /// Quantifier of each bound level.
  std::vector<bool> universal;
  Formula matrix;
};

/// Builds the variable order for a prenex form; `free_order` fixes the free
/// variables (unused names are dropped, missing ones appended).
CadProblem layout(const PrenexForm& p, const std::vector<std::string>& free_order = {});

/// Truth value and sign vector of one cell of the free-variable space.
struct FreeCell {
  SamplePoint sample;
  std::vector<int> signs;
  bool truth;
};

/// Partial cylindrical decomposition evaluating a CadProblem.
class Cad {
 public:
  Cad(CadProblem problem, const Deadline* deadline = nullptr);

  const CadProblem& problem() const { return problem_; }
  const ProjectionSet& projection() const { return projection_; }

  /// Truth of a closed problem.
  bool decide() const;

  /// Every cell of the free-variable space with the signs of the
  /// free-level projection factors (flattened, lowest level first).
  std::vector<FreeCell> free_cells() const;
  /// The flattened free-level factors in the order used by free_cells().
  std::vector<Polynomial> free_factors() const;

  /// Sample points satisfying the matrix, treating every variable as
  /// existential. Stops after `limit` points.
  std::vector<SamplePoint> satisfying_samples(size_t limit) const;

 private:
  struct Node {
    Formula::Kind kind;
    size_t atom = 0;
    std::vector<size_t> children;
  };
  struct AtomInfo {
    Polynomial poly;
    Relation relation;
    size_t level;
  };
  using Values = std::vector<std::optional<bool>>;

  void compile();
  void assign_atoms(const SamplePoint& pt, Values& values) const;
  std::optional<bool> evaluate(const Values& values) const;
  bool decide_from(const SamplePoint& pt, Values values) const;
  void enumerate_free(const SamplePoint& pt, std::vector<FreeCell>& out) const;
  void collect(const SamplePoint& pt, Values values, size_t limit,
               std::vector<SamplePoint>& out) const;
  std::vector<CellSample> cells_over(const SamplePoint& pt) const;

  CadProblem problem_;
  const Deadline* deadline_;
  ProjectionSet projection_;
  std::vector<AtomInfo> atoms_;
  std::vector<Node> nodes_;
};

}  // namespace rlfgen
