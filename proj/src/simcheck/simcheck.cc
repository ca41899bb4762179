#include "rlfgen/simcheck.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "rlfgen/ideals.h"

namespace rlfgen {

FloatPolynomial::FloatPolynomial(const Polynomial& p) : arity_(p.ring().size()) {
  std::vector<std::pair<std::vector<uint32_t>, double>> terms;
  for (const auto& [m, c] : p.terms()) terms.emplace_back(m.exponents(), c.get_d());
  root_ = compile(std::move(terms), static_cast<int>(arity_) - 1);
}

FloatPolynomial::Node FloatPolynomial::compile(std::vector<std::pair<std::vector<uint32_t>, double>> terms,
                                               int var) {
  Node n;
  while (var >= 0) {
    uint32_t top = 0;
    for (const auto& t : terms) top = std::max(top, t.first[var]);
    if (top > 0) break;
    --var;
  }
  if (var < 0) {
    for (const auto& t : terms) n.constant += t.second;
    return n;
  }
  n.var = var;
  std::vector<std::vector<std::pair<std::vector<uint32_t>, double>>> groups;
  for (auto& t : terms) {
    const uint32_t d = t.first[var];
    if (groups.size() <= d) groups.resize(d + 1);
    groups[d].push_back(std::move(t));
  }
  for (auto& g : groups) n.coeffs.push_back(compile(std::move(g), var - 1));
  return n;
}

double FloatPolynomial::evaluate(const Node& n, const std::vector<double>& x) {
  if (n.var < 0) return n.constant;
  double acc = 0;
  for (size_t d = n.coeffs.size(); d-- > 0;) acc = acc * x[n.var] + evaluate(n.coeffs[d], x);
  return acc;
}

double FloatPolynomial::operator()(const std::vector<double>& x) const {
  if (x.size() != arity_) throw Error("point has " + std::to_string(x.size()) + " coordinates, expected " +
                                      std::to_string(arity_));
  return evaluate(root_, x);
}

FloatField::FloatField(const VectorField& f) {
  for (const auto& c : f.components()) components_.emplace_back(c);
}

std::vector<double> FloatField::operator()(const std::vector<double>& x) const {
  std::vector<double> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c(x));
  return out;
}

std::vector<double> FloatField::rk4_step(const std::vector<double>& x, double h) const {
  const size_t n = x.size();
  auto shifted = [&](const std::vector<double>& k, double s) {
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = x[i] + s * k[i];
    return y;
  };
  const auto k1 = (*this)(x);
  const auto k2 = (*this)(shifted(k1, h / 2));
  const auto k3 = (*this)(shifted(k2, h / 2));
  const auto k4 = (*this)(shifted(k3, h));
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) y[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return y;
}

namespace {

double norm(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

bool finite(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> random_in_ball(std::mt19937_64& rng, size_t n, double radius) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  while (true) {
    std::vector<double> x(n);
    for (auto& v : x) v = gauss(rng);
    const double len = norm(x);
    if (len == 0) continue;
    const double scale = radius * std::pow(unit(rng), 1.0 / static_cast<double>(n)) / len;
    for (auto& v : x) v *= scale;
    return x;
  }
}

}  // namespace

Trajectory simulate(const VectorField& f, const std::vector<double>& x0, double h, double T,
                    const SimulationOptions& options) {
  if (!(h > 0) || !std::isfinite(h)) throw Error("step must be positive and finite");
  if (!std::isfinite(T) || T < h) throw Error("horizon must be finite and at least one step");
  if (x0.size() != f.dimension()) throw Error("initial state has the wrong dimension");
  if (!finite(x0)) throw Error("initial state is not finite");
  const FloatField field(f);
  const auto steps = static_cast<size_t>(std::floor(T / h + 1e-9));
  Trajectory tr;
  tr.step = h;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  tr.times.push_back(0);
  tr.states.push_back(x0);
  for (size_t k = 1; k <= steps; ++k) {
    std::vector<double> next = field.rk4_step(tr.states.back(), h);
    if (!finite(next) || norm(next) > options.divergence_bound) {
      tr.diverged = true;
      break;
    }
    tr.times.push_back(static_cast<double>(k) * h);
    tr.states.push_back(std::move(next));
  }
  return tr;
}

void write_csv(const Trajectory& trajectory, const Ring& state, std::ostream& out) {
  out << "t";
  for (const auto& name : state.names()) out << ',' << name;
  out << '\n' << std::setprecision(17);
  for (size_t k = 0; k < trajectory.times.size(); ++k) {
    out << trajectory.times[k];
    for (double v : trajectory.states[k]) out << ',' << v;
    out << '\n';
  }
}

double lie_vs_fd(const Polynomial& p, const VectorField& f, const std::vector<double>& x0, double h) {
  const Polynomial q = p.embed(f.state());
  const FloatPolynomial value(q);
  const FloatPolynomial derivative(lie_derivative(q, f, 1));
  const std::vector<double> x1 = FloatField(f).rk4_step(x0, h);
  return std::abs((value(x1) - value(x0)) / h - derivative(x0));
}

bool ValidationReport::all_converged() const {
  return std::all_of(starts.begin(), starts.end(), [](const StartReport& s) { return s.converged; });
}

bool ValidationReport::all_monotone() const {
  return std::all_of(starts.begin(), starts.end(), [](const StartReport& s) { return s.monotone; });
}

ValidationReport validate_rlf(const RlfCertificate& cert, const VectorField& f, const ValidationConfig& config) {
  ValidationReport report;
  report.convergence_threshold = config.convergence_threshold;
  report.monotone_tolerance = config.monotone_tolerance;
  report.horizon = config.horizon;
  report.fd_step = config.fd_step;
  const size_t n = f.dimension();
  const double radius = cert.radius ? cert.radius->get_d() : 1.0;
  const Polynomial v = cert.instance.embed(f.state());
  const FloatPolynomial value(v);
  std::mt19937_64 rng(config.seed);

  if (config.horizon > 0) {
    for (unsigned s = 0; s < config.starts; ++s) {
      StartReport sr;
      sr.start = random_in_ball(rng, n, radius / 2);
      const Trajectory tr = simulate(f, sr.start, config.step, config.horizon);
      sr.diverged = tr.diverged;
      sr.final_norm = norm(tr.states.back());
      sr.converged = !tr.diverged && sr.final_norm < config.convergence_threshold;
      double prev = value(tr.states.front());
      sr.max_increase = -INFINITY;
      for (size_t k = 1; k < tr.states.size(); ++k) {
        const double cur = value(tr.states[k]);
        sr.max_increase = std::max(sr.max_increase, cur - prev);
        prev = cur;
      }
      if (tr.states.size() < 2) sr.max_increase = 0;
      sr.monotone = sr.max_increase <= config.monotone_tolerance;
      report.starts.push_back(std::move(sr));
    }
  }

  const FloatPolynomial first(lie_derivative(v, f, 1));
  for (unsigned k = 0; k < config.fd_points; ++k) {
    const auto x = random_in_ball(rng, n, radius);
    const double scale = std::max(1.0, std::abs(first(x)));
    report.fd_max_relative_error =
        std::max(report.fd_max_relative_error, lie_vs_fd(v, f, x, config.fd_step) / scale);
    ++report.fd_points;
  }

  if (config.transverse_samples > 0) {
    unsigned bound = 0;
    try {
      bound = chain_bound(Template(v), f);
    } catch (const LimitExceededError&) {
      return report;
    }
    LieChain chain(v, f);
    std::vector<FloatPolynomial> lie;
    for (unsigned k = 1; k <= bound; ++k) lie.emplace_back(chain.get(k));
    const Rational r2 = cert.radius ? Rational(*cert.radius * *cert.radius) : Rational(1);
    while (report.transverse_checked < config.transverse_samples) {
      const auto x = random_in_ball(rng, n, radius);
      std::vector<Rational> exact;
      Rational len = 0;
      for (double c : x) {
        exact.push_back(make_rational(std::lround(c * 1024), 1024));
        len += exact.back() * exact.back();
      }
      if (len == 0 || len >= r2) continue;
      std::vector<double> rounded;
      for (const auto& c : exact) rounded.push_back(c.get_d());
      bool numeric = false;
      for (const auto& l : lie) {
        const double d = l(rounded);
        if (std::abs(d) > config.zero_tolerance) {
          numeric = d < 0;
          break;
        }
      }
      ++report.transverse_checked;
      if (numeric == in_transverse_set(chain, exact, bound)) ++report.transverse_agree;
    }
  }
  return report;
}

}  // namespace rlfgen
