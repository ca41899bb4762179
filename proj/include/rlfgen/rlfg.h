#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rlfgen/builders.h"
#include "rlfgen/ideals.h"
#include "rlfgen/realqe.h"

namespace rlfgen {

/// Grid mode decides each rational (u, r) candidate exactly; parametric mode
/// keeps u and r symbolic and eliminates the state variables.
enum class SearchMode { kGrid, kParametric };
std::string to_string(SearchMode m);
SearchMode parse_search_mode(const std::string& name);

/// Candidate values for one template parameter: lo, lo + step, ..., <= hi.
struct GridAxis {
  std::string param;
  Rational lo;
  Rational hi;
  Rational step;

  std::vector<Rational> values() const;
};

/// Parses "a:-2..2:1/2" (the step defaults to 1).
GridAxis parse_grid_axis(const std::string& text);

struct RlfgConfig {
  SearchMode mode = SearchMode::kGrid;
  QeConfig qe;
  /// Grid axes; parameters without an axis default to -2..2 step 1.
  std::vector<GridAxis> grid;
  /// Radius candidates in grid mode.
  std::vector<Rational> radii{Rational(1), Rational(1, 2), Rational(1, 4)};
  /// Parametric mode: fix the radius instead of keeping it free.
  std::optional<Rational> fixed_radius;
  /// Search over the whole state space instead of a ball around the origin.
  /// No radius is involved; radii and fixed_radius must be left alone.
  bool whole_space = false;
  /// Caps the Lie order below the chain bound.
  std::optional<unsigned> max_order;
  FalsifierOptions falsifier;
  /// Pointwise transversality samples in verify_certificate.
  unsigned transverse_samples = 64;
  ChainOptions chain;
};

/// One condition decided for a certificate.
struct Evidence {
  std::string condition;
  Truth verdict = Truth::kUnknown;
  std::string backend;

  bool operator==(const Evidence&) const = default;
};

/// A relaxed Lyapunov function found for one template: the parameter
/// witness, the ball radius, and the evidence gathered for it.
struct RlfCertificate {
  Template templ;
  /// In the order of templ.params().
  std::vector<Rational> params;
  /// Absent when the certificate covers the whole state space.
  std::optional<Rational> radius;
  unsigned iteration = 0;
  std::vector<Evidence> evidence;
  /// templ instantiated at params, over the state ring.
  Polynomial instance;
};

/// Where the search stopped. kRes0Empty, kResEmpty and kFixedPoint are the
/// three ways the algorithm can return the empty set; kOrderCap is the
/// fixed point of a chain truncated by max_order.
enum class Exit { kFound, kRes0Empty, kResEmpty, kFixedPoint, kOrderCap, kUndecided };
std::string to_string(Exit e);

/// A grid point (u, r); without r over the whole state space.
struct Candidate {
  std::vector<Rational> params;
  std::optional<Rational> radius;

  bool operator==(const Candidate&) const = default;
};

struct Outcome {
  enum class Kind { kFound, kNoneForTemplate, kUnknown };
  Kind kind = Kind::kUnknown;
  Exit exit = Exit::kUndecided;
  std::optional<RlfCertificate> certificate;
  std::string reason;
  /// Iterations i >= 1 that were started.
  unsigned iterations = 0;
  unsigned chain_bound = 0;
  /// Grid mode: survivors[i] is Res^i.
  std::vector<std::vector<Candidate>> survivors;
  /// Parametric mode: res[i] is Res^i over (u, r).
  std::vector<Formula> res;
  /// Parametric mode, on success: Res^{i-1} and QE(theta^i).
  std::optional<Formula> solution;
};
std::string to_string(Outcome::Kind k);

/// The search state between iterations.
struct SearchState {
  unsigned iteration = 0;
  std::vector<std::vector<Candidate>> survivors;
  std::vector<Formula> res;
  bool tainted = false;
  std::string taint;
};

/// The stepwise search for one vector field and template.
class RlfgSearch {
 public:
  /// Throws Error when f(0) != 0 or the template and field disagree on the
  /// state variables.
  RlfgSearch(VectorField f, Template p, RlfgConfig config);

  const SearchState& state() const { return state_; }
  unsigned chain_bound() const { return bound_; }
  /// Last iteration that will be attempted.
  unsigned last_iteration() const;

  /// Computes Res^0; returns an outcome if the search already ends.
  std::optional<Outcome> start();
  /// Runs iteration state().iteration + 1.
  std::optional<Outcome> step();
  /// start() and step() until an outcome.
  Outcome run();

 private:
  Verdict decide(const Formula& f, const Candidate& c);
  Candidate preferred(const std::vector<Candidate>& found) const;
  std::optional<Outcome> grid_step(unsigned i);
  std::optional<Outcome> parametric_step(unsigned i);
  std::optional<Outcome> conclude_exhausted(Exit exit);
  Outcome finish(Outcome o) const;
  std::optional<Outcome> found(const Candidate& c, unsigned i, const std::vector<Evidence>& ev);
  std::vector<std::string> free_names() const;
  Formula instantiate_radius(const Formula& f) const;
  QeResult eliminate(const Formula& f);

  VectorField field_;
  Template template_;
  RlfgConfig config_;
  FormulaBuilder builder_;
  unsigned bound_ = 0;
  SearchState state_;
  std::optional<Formula> solution_;
};

Outcome run(const VectorField& f, const Template& p, const RlfgConfig& config = {});

struct VerificationReport {
  bool valid = false;
  std::vector<Evidence> evidence;
  /// Sampled points checked with in_transverse_set, and how many passed.
  size_t transverse_checked = 0;
  size_t transverse_passed = 0;
  std::string reason;
};

/// Re-derives the three conditions at the certificate's witness and radius
/// and decides them, independently of how the certificate was found.
VerificationReport verify_certificate_report(const RlfCertificate& cert, const VectorField& f,
                                             const RlfgConfig& config = {});
bool verify_certificate(const RlfCertificate& cert, const VectorField& f,
                        const RlfgConfig& config = {});

/// JSON document with exact rationals as strings; a whole-space
/// certificate has a null radius.
std::string certificate_to_json(const RlfCertificate& cert);
RlfCertificate certificate_from_json(const std::string& text);

}  // namespace rlfgen
