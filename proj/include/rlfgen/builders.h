#pragma once

#include <string>
#include <vector>

#include "rlfgen/dynamics.h"
#include "rlfgen/formula.h"

namespace rlfgen {

/// Builds the formulas of the relaxed Lyapunov search for one template and
/// vector field. All atoms live over params ++ state ++ {radius}; the state
/// variables are always bound, so every quantified formula has free variables
/// among the parameters and the radius. An empty radius name selects the
/// whole state space: the ball guard becomes |x|^2 > 0 and there is no
/// radius variable.
///
/// The builder memoizes the Lie chain; it is not safe to share one instance
/// between threads.
class FormulaBuilder {
 public:
  FormulaBuilder(Template p, VectorField f, std::string radius = "r");

  const Template& templ() const { return template_; }
  const VectorField& field() const { return field_; }
  /// params ++ state ++ {radius}.
  const Ring& ring() const { return ring_; }
  const std::string& radius() const { return radius_; }
  bool whole_space() const { return radius_.empty(); }

  /// L^k p over ring().
  const Polynomial& lie(unsigned k);

  /// The punctured open ball 0 < |x|^2 < r^2 as two strict atoms, or
  /// |x|^2 > 0 over the whole space.
  Formula ball() const;
  /// |x|^2 over ring().
  Polynomial norm_squared() const;

  /// Block i: L^1 p = 0 and ... and L^{i-1} p = 0 and L^i p < 0.
  Formula varphi_block(unsigned i);
  /// Disjunction of blocks 1..n.
  Formula varphi(unsigned n);

  /// p(u, 0) = 0.
  Formula phi1();
  /// r > 0 and, for all x in the punctured ball, p(u, x) > 0 (without the
  /// radius condition over the whole space).
  Formula phi2();
  /// For all x in the punctured ball, varphi(n).
  Formula phi3(unsigned n);
  Formula phi(unsigned n);

  /// L^1 p = 0 and ... and L^{i-1} p = 0 (true for i = 1).
  Formula psi(unsigned i);
  /// For all x: (ball and psi^i) -> L^i p < 0.
  Formula theta(unsigned i);
  /// As theta with L^i p <= 0.
  Formula theta_bar(unsigned i);
  /// For all x: ball -> (varphi blocks 1..i or psi^{i+1}).
  Formula phi_bar(unsigned i);
  /// For all x: ball -> varphi(i).
  Formula phi_tilde(unsigned i);

 private:
  std::vector<Formula> ball_atoms() const;
  Formula guarded(Formula antecedent_extra, Formula consequent) const;
  std::vector<Formula> blocks(unsigned n);

  Template template_;
  VectorField field_;
  std::string radius_;
  Ring ring_;
  LieChain chain_;
};

Formula build_ball(const Ring& state, const std::string& radius);
Formula build_varphi(const Template& p, const VectorField& f, unsigned n);
/// Requires f(0) = 0.
Formula build_phi(const Template& p, const VectorField& f, unsigned n);
Formula build_psi(const Template& p, const VectorField& f, unsigned i);
Formula build_theta(const Template& p, const VectorField& f, unsigned i);
Formula build_theta_bar(const Template& p, const VectorField& f, unsigned i);
Formula build_phi_bar(const Template& p, const VectorField& f, unsigned i);
Formula build_phi_tilde(const Template& p, const VectorField& f, unsigned i);

}  // namespace rlfgen
