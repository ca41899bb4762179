#include "rlfgen/rlfg.h"

#include <algorithm>
#include <sstream>

#include "rlfgen/cad.h"

namespace rlfgen {

std::string to_string(SearchMode m) { return m == SearchMode::kGrid ? "grid" : "parametric"; }

SearchMode parse_search_mode(const std::string& name) {
  if (name == "grid") return SearchMode::kGrid;
  if (name == "parametric") return SearchMode::kParametric;
  throw Error("unknown search mode '" + name + "' (expected grid or parametric)");
}

std::vector<Rational> GridAxis::values() const {
  if (step <= 0) throw Error("grid step for " + param + " must be positive");
  if (hi < lo) throw Error("empty grid range for " + param);
  std::vector<Rational> out;
  for (Rational v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

GridAxis parse_grid_axis(const std::string& text) {
  const size_t colon = text.find(':');
  const size_t dots = text.find("..");
  if (colon == std::string::npos || dots == std::string::npos || dots < colon) {
    throw Error("grid axis '" + text + "' must look like name:lo..hi[:step]");
  }
  GridAxis axis;
  axis.param = text.substr(0, colon);
  if (axis.param.empty()) throw Error("grid axis '" + text + "' has no parameter name");
  axis.lo = parse_rational(text.substr(colon + 1, dots - colon - 1));
  const std::string rest = text.substr(dots + 2);
  const size_t step = rest.find(':');
  axis.hi = parse_rational(rest.substr(0, step));
  axis.step = step == std::string::npos ? Rational(1) : parse_rational(rest.substr(step + 1));
  axis.values();
  return axis;
}

std::string to_string(Exit e) {
  switch (e) {
    case Exit::kFound: return "found";
    case Exit::kRes0Empty: return "initial-set-empty";
    case Exit::kResEmpty: return "set-empty";
    case Exit::kFixedPoint: return "fixed-point";
    case Exit::kOrderCap: return "order-cap";
    case Exit::kUndecided: return "undecided";
  }
  return "undecided";
}

std::string to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::kFound: return "found";
    case Outcome::Kind::kNoneForTemplate: return "none-for-template";
    case Outcome::Kind::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::string fresh_radius_name(const Template& p) {
  std::string name = "r";
  for (int k = 0; p.params().index_of(name) || p.state().index_of(name); ++k) {
    name = "r" + std::to_string(k);
  }
  return name;
}

Outcome unknown(std::string reason) {
  Outcome o;
  o.kind = Outcome::Kind::kUnknown;
  o.reason = std::move(reason);
  return o;
}

Formula qe_formula(const QeResult& r) {
  switch (r.kind) {
    case QeResult::Kind::kTrue: return Formula::truth();
    case QeResult::Kind::kFalse: return Formula::falsity();
    default: return r.formula;
  }
}

std::string qe_failure(const std::string& what, const QeResult& r) {
  return what + ": " + to_string(r.reason) + (r.detail.empty() ? "" : " (" + r.detail + ")");
}

std::tuple<Integer, Integer> simplicity(const std::vector<Rational>& values) {
  Integer den = 1;
  Integer num = 0;
  for (const auto& v : values) {
    den = std::max<Integer>(den, v.get_den());
    num += abs(v.get_num());
  }
  return {den, num};
}

}  // namespace

RlfgSearch::RlfgSearch(VectorField f, Template p, RlfgConfig config)
    : field_(std::move(f)),
      template_(std::move(p)),
      config_(std::move(config)),
      builder_(template_, field_, config_.whole_space ? std::string() : fresh_radius_name(template_)) {
  if (!equilibrium_check(field_)) throw Error("the origin is not an equilibrium of the vector field");
  if (!(template_.state() == field_.state())) {
    throw Error("template state " + template_.state().to_string() + " differs from field state " +
                field_.state().to_string());
  }
  if (config_.whole_space && config_.fixed_radius) throw Error("a fixed radius cannot be combined with the whole space");
  if (config_.fixed_radius && *config_.fixed_radius <= 0) throw Error("radius must be positive");
  for (const auto& r : config_.radii) {
    if (r <= 0) throw Error("radius candidates must be positive");
  }
  for (const auto& axis : config_.grid) {
    if (!template_.params().index_of(axis.param)) throw Error("grid axis for unknown parameter " + axis.param);
  }
}

unsigned RlfgSearch::last_iteration() const {
  return config_.max_order ? std::min(bound_, *config_.max_order) : bound_;
}

std::vector<std::string> RlfgSearch::free_names() const {
  std::vector<std::string> names = template_.params().names();
  if (!config_.fixed_radius && !config_.whole_space) names.push_back(builder_.radius());
  return names;
}

Formula RlfgSearch::instantiate_radius(const Formula& f) const {
  if (!config_.fixed_radius) return f;
  return simplify(substitute(f, {{builder_.radius(), *config_.fixed_radius}}));
}

QeResult RlfgSearch::eliminate(const Formula& f) { return qe(instantiate_radius(f), free_names(), config_.qe); }

Verdict RlfgSearch::decide(const Formula& f, const Candidate& c) {
  Assignment a;
  if (c.radius) a[builder_.radius()] = *c.radius;
  for (size_t i = 0; i < c.params.size(); ++i) a[template_.params().name(i)] = c.params[i];
  const Formula g = simplify(substitute(f, a));
  Verdict v;
  if (g.kind() == Formula::Kind::kTrue || g.kind() == Formula::Kind::kFalse) {
    v.truth = g.kind() == Formula::Kind::kTrue ? Truth::kTrue : Truth::kFalse;
    v.backend = "simplifier";
    return v;
  }
  const PrenexForm pf = prenex(g);
  const bool universal = std::all_of(pf.prefix.begin(), pf.prefix.end(),
                                     [](const QuantifierBlock& b) { return b.universal; });
  if (universal && falsify_universal(g, config_.falsifier)) {
    v.truth = Truth::kFalse;
    v.backend = "falsifier";
    return v;
  }
  return decide_closed(g, config_.qe);
}

Candidate RlfgSearch::preferred(const std::vector<Candidate>& found) const {
  return *std::min_element(found.begin(), found.end(), [](const Candidate& x, const Candidate& y) {
    return simplicity(x.params) < simplicity(y.params);
  });
}

Outcome RlfgSearch::finish(Outcome o) const {
  o.iterations = state_.iteration;
  o.chain_bound = bound_;
  o.survivors = state_.survivors;
  o.res = state_.res;
  o.solution = solution_;
  return o;
}

std::optional<Outcome> RlfgSearch::conclude_exhausted(Exit exit) {
  Outcome o;
  o.exit = exit;
  if (config_.mode == SearchMode::kGrid) {
    o.kind = Outcome::Kind::kUnknown;
    o.reason = "grid exhausted (" + to_string(exit) + ")";
  } else if (state_.tainted) {
    o.kind = Outcome::Kind::kUnknown;
    o.reason = state_.taint;
  } else {
    o.kind = Outcome::Kind::kNoneForTemplate;
    if (exit == Exit::kOrderCap) o.reason = "no solution up to Lie order " + std::to_string(last_iteration());
    std::string scope;
    if (config_.fixed_radius) scope = "radius fixed at " + to_string(*config_.fixed_radius);
    if (config_.whole_space) scope = "whole state space";
    if (!scope.empty()) o.reason += (o.reason.empty() ? "" : "; ") + scope;
  }
  return finish(std::move(o));
}

std::optional<Outcome> RlfgSearch::found(const Candidate& c, unsigned i, const std::vector<Evidence>& ev) {
  RlfCertificate cert{template_, c.params, c.radius, i, ev, template_.instantiate(c.params)};
  const VerificationReport report = verify_certificate_report(cert, field_, config_);
  if (!report.valid) return finish(unknown("candidate failed certificate verification: " + report.reason));
  Outcome o;
  o.kind = Outcome::Kind::kFound;
  o.exit = Exit::kFound;
  o.certificate = std::move(cert);
  return finish(std::move(o));
}

std::optional<Outcome> RlfgSearch::start() {
  state_ = SearchState{};
  solution_.reset();
  try {
    bound_ = rlfgen::chain_bound(template_, field_, config_.chain);
  } catch (const LimitExceededError& e) {
    return finish(unknown(std::string("chain bound not computable: ") + e.what()));
  }
  const Formula initial = Formula::conjunction({builder_.phi1(), builder_.phi2()});
  if (config_.mode == SearchMode::kGrid) {
    std::vector<std::vector<Rational>> axes;
    for (const auto& name : template_.params().names()) {
      auto it = std::find_if(config_.grid.begin(), config_.grid.end(),
                             [&](const GridAxis& a) { return a.param == name; });
      axes.push_back(it != config_.grid.end() ? it->values()
                                              : GridAxis{name, Rational(-2), Rational(2), Rational(1)}.values());
    }
    std::vector<std::vector<Rational>> points{{}};
    for (const auto& axis : axes) {
      std::vector<std::vector<Rational>> next;
      for (const auto& prefix : points) {
        for (const auto& v : axis) {
          next.push_back(prefix);
          next.back().push_back(v);
        }
      }
      points = std::move(next);
    }
    std::vector<std::optional<Rational>> radii;
    if (config_.whole_space) {
      radii.emplace_back();
    } else {
      radii.assign(config_.radii.begin(), config_.radii.end());
    }
    std::vector<Candidate> res0;
    for (const auto& u : points) {
      for (const auto& r : radii) {
        const Candidate c{u, r};
        const Verdict v = decide(initial, c);
        if (v.truth == Truth::kTrue) {
          res0.push_back(c);
        } else if (v.truth == Truth::kUnknown && !state_.tainted) {
          state_.tainted = true;
          state_.taint = "initial condition undecided: " + to_string(v.reason);
        }
      }
    }
    state_.survivors.push_back(res0);
    if (res0.empty()) return conclude_exhausted(Exit::kRes0Empty);
  } else {
    const QeResult r = eliminate(initial);
    if (r.kind == QeResult::Kind::kUnknown) return finish(unknown(qe_failure("initial elimination", r)));
    state_.res.push_back(simplify(qe_formula(r)));
    const Witness w = find_witness(state_.res.back(), config_.qe);
    if (w.status == Witness::Status::kUnknown) return finish(unknown("initial emptiness check: " + w.detail));
    if (w.status == Witness::Status::kNone) return conclude_exhausted(Exit::kRes0Empty);
  }
  if (last_iteration() == 0) return conclude_exhausted(Exit::kOrderCap);
  return std::nullopt;
}

std::optional<Outcome> RlfgSearch::step() {
  const unsigned i = state_.iteration + 1;
  if (i > last_iteration()) throw std::logic_error("search already finished");
  state_.iteration = i;
  return config_.mode == SearchMode::kGrid ? grid_step(i) : parametric_step(i);
}

std::optional<Outcome> RlfgSearch::grid_step(unsigned i) {
  const std::vector<Candidate> current = state_.survivors.back();
  const Formula theta = builder_.theta(i);
  std::vector<Candidate> hits;
  std::vector<Verdict> hit_verdicts;
  for (const auto& c : current) {
    const Verdict v = decide(theta, c);
    if (v.truth == Truth::kTrue) {
      hits.push_back(c);
      hit_verdicts.push_back(v);
    } else if (v.truth == Truth::kUnknown && !state_.tainted) {
      state_.tainted = true;
      state_.taint = "strict condition undecided at iteration " + std::to_string(i) + ": " + to_string(v.reason);
    }
  }
  if (!hits.empty()) {
    const Candidate best = preferred(hits);
    const size_t k = static_cast<size_t>(std::find(hits.begin(), hits.end(), best) - hits.begin());
    std::vector<Evidence> ev;
    const Verdict phi1 = decide(builder_.phi1(), best);
    ev.push_back({"phi1", phi1.truth, phi1.backend});
    const Verdict phi2 = decide(builder_.phi2(), best);
    ev.push_back({"phi2", phi2.truth, phi2.backend});
    ev.push_back({"theta" + std::to_string(i), hit_verdicts[k].truth, hit_verdicts[k].backend});
    return found(best, i, ev);
  }
  const Formula theta_bar = builder_.theta_bar(i);
  std::vector<Candidate> next;
  for (const auto& c : current) {
    const Verdict v = decide(theta_bar, c);
    if (v.truth == Truth::kTrue) {
      next.push_back(c);
    } else if (v.truth == Truth::kUnknown && !state_.tainted) {
      state_.tainted = true;
      state_.taint = "relaxed condition undecided at iteration " + std::to_string(i) + ": " + to_string(v.reason);
    }
  }
  state_.survivors.push_back(next);
  if (next.empty()) return conclude_exhausted(Exit::kResEmpty);
  if (i == last_iteration()) return conclude_exhausted(i == bound_ ? Exit::kFixedPoint : Exit::kOrderCap);
  return std::nullopt;
}

std::optional<Outcome> RlfgSearch::parametric_step(unsigned i) {
  const QeResult strict = eliminate(builder_.theta(i));
  if (strict.kind == QeResult::Kind::kUnknown) {
    return finish(unknown(qe_failure("strict condition at iteration " + std::to_string(i), strict)));
  }
  const Formula temp = simplify(Formula::conjunction({state_.res.back(), qe_formula(strict)}));
  const Witness w = find_witness(temp, config_.qe);
  if (w.status == Witness::Status::kFound) {
    solution_ = temp;
    Candidate c;
    for (const auto& name : template_.params().names()) {
      auto it = w.point.find(name);
      c.params.push_back(it == w.point.end() ? Rational(0) : it->second);
    }
    if (config_.fixed_radius) {
      c.radius = *config_.fixed_radius;
    } else if (!config_.whole_space) {
      auto it = w.point.find(builder_.radius());
      c.radius = it == w.point.end() ? Rational(1) : it->second;
    }
    std::vector<Evidence> ev{{"phi1", Truth::kTrue, "cad"},
                             {"phi2", Truth::kTrue, "cad"},
                             {"theta" + std::to_string(i), Truth::kTrue, "cad"}};
    return found(c, i, ev);
  }
  if (w.status != Witness::Status::kNone) {
    return finish(unknown("solution set at iteration " + std::to_string(i) + " has no usable witness: " + w.detail));
  }
  const QeResult relaxed = eliminate(builder_.theta_bar(i));
  if (relaxed.kind == QeResult::Kind::kUnknown) {
    return finish(unknown(qe_failure("relaxed condition at iteration " + std::to_string(i), relaxed)));
  }
  state_.res.push_back(simplify(Formula::conjunction({state_.res.back(), qe_formula(relaxed)})));
  const Witness nonempty = find_witness(state_.res.back(), config_.qe);
  if (nonempty.status == Witness::Status::kUnknown) {
    return finish(unknown("emptiness check at iteration " + std::to_string(i) + ": " + nonempty.detail));
  }
  if (nonempty.status == Witness::Status::kNone) return conclude_exhausted(Exit::kResEmpty);
  if (i == last_iteration()) return conclude_exhausted(i == bound_ ? Exit::kFixedPoint : Exit::kOrderCap);
  return std::nullopt;
}

Outcome RlfgSearch::run() {
  if (auto o = start()) return *o;
  while (true) {
    if (auto o = step()) return *o;
  }
}

Outcome run(const VectorField& f, const Template& p, const RlfgConfig& config) {
  RlfgSearch search(f, p, config);
  return search.run();
}

}  // namespace rlfgen
