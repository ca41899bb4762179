#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlfgen/dynamics.h"
#include "rlfgen/rlfg.h"

namespace rlfgen {

/// A polynomial compiled for double evaluation: nested Horner schemes over
/// the ring's variable order, outermost in the last variable. Coefficients
/// are rounded once at compile time; evaluation never touches exact
/// arithmetic.
class FloatPolynomial {
 public:
  explicit FloatPolynomial(const Polynomial& p);

  size_t arity() const { return arity_; }
  /// x must have one entry per ring variable.
  double operator()(const std::vector<double>& x) const;

 private:
  struct Node {
    /// -1 for a constant leaf.
    int var = -1;
    double constant = 0;
    /// coeffs[d] multiplies x_var^d.
    std::vector<Node> coeffs;
  };
  static Node compile(std::vector<std::pair<std::vector<uint32_t>, double>> terms, int var);
  static double evaluate(const Node& n, const std::vector<double>& x);

  size_t arity_;
  Node root_;
};

/// A vector field compiled with FloatPolynomial.
class FloatField {
 public:
  explicit FloatField(const VectorField& f);

  size_t dimension() const { return components_.size(); }
  std::vector<double> operator()(const std::vector<double>& x) const;
  /// One classical Runge-Kutta step of size h.
  std::vector<double> rk4_step(const std::vector<double>& x, double h) const;

 private:
  std::vector<FloatPolynomial> components_;
};

struct SimulationOptions {
  /// Integration stops once |x| exceeds this bound or turns non-finite.
  double divergence_bound = 1e6;
};

/// Fixed-step trajectory; states[k] is the state at times[k] = k * step.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double step = 0;
  std::string method = "rk4";
  /// Set when integration stopped early at the divergence bound.
  bool diverged = false;
};

/// Integrates x' = f(x) from x0 over [0, T] with floor(T / h) RK4 steps.
/// Throws Error unless h > 0, T >= h, and x0 is finite with one entry per
/// state variable.
Trajectory simulate(const VectorField& f, const std::vector<double>& x0, double h, double T,
                    const SimulationOptions& options = {});

/// Writes "t,<state names>" and one row per step.
void write_csv(const Trajectory& trajectory, const Ring& state, std::ostream& out);

/// |(p(x(h)) - p(x0)) / h - L^1 p(x0)| where x(h) is one RK4 step from x0.
/// p must live over the state variables.
double lie_vs_fd(const Polynomial& p, const VectorField& f, const std::vector<double>& x0, double h);

struct ValidationConfig {
  /// Random starts drawn uniformly from B(0, r0 / 2), or B(0, 1/2) for a
  /// whole-space certificate.
  unsigned starts = 20;
  std::uint64_t seed = 1;
  double step = 1e-3;
  /// Zero skips the trajectory section.
  double horizon = 20;
  double convergence_threshold = 1e-3;
  /// Largest allowed per-step increase of V.
  double monotone_tolerance = 1e-9;
  /// Finite-difference checks of L^1 V at random ball points.
  unsigned fd_points = 100;
  double fd_step = 1e-5;
  /// Points where the exact transverse-set test is compared with the sign
  /// of the first nonvanishing Lie derivative evaluated in floating point.
  unsigned transverse_samples = 100;
  /// |L^k V(x)| at or below this counts as zero in the floating-point test.
  double zero_tolerance = 1e-12;
};

struct StartReport {
  std::vector<double> start;
  double final_norm = 0;
  bool converged = false;
  bool diverged = false;
  /// Largest V(x_{k+1}) - V(x_k) along the trajectory.
  double max_increase = 0;
  bool monotone = false;
};

struct ValidationReport {
  double convergence_threshold = 0;
  double monotone_tolerance = 0;
  double horizon = 0;
  std::vector<StartReport> starts;
  double fd_step = 0;
  size_t fd_points = 0;
  /// Largest lie_vs_fd discrepancy divided by max(1, |L^1 V(x)|).
  double fd_max_relative_error = 0;
  size_t transverse_checked = 0;
  size_t transverse_agree = 0;

  bool all_converged() const;
  bool all_monotone() const;
};

/// Empirical checks of a certificate: convergence and monotonicity of V
/// along simulated trajectories, L^1 V against finite differences, and
/// agreement of the exact transverse-set test with floating-point signs.
/// Failures are recorded in the report, never thrown.
ValidationReport validate_rlf(const RlfCertificate& cert, const VectorField& f,
                              const ValidationConfig& config = {});

}  // namespace rlfgen
