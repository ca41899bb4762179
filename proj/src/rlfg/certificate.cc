#include <json.hpp>
#include <random>
#include <set>

#include "rlfgen/cad.h"
#include "rlfgen/parser.h"
#include "rlfgen/rlfg.h"

namespace rlfgen {

namespace {

Truth parse_truth(const std::string& s) {
  if (s == "true") return Truth::kTrue;
  if (s == "false") return Truth::kFalse;
  if (s == "unknown") return Truth::kUnknown;
  throw Error("bad verdict '" + s + "' in certificate");
}

Verdict decide_exact(const Formula& f, const RlfgConfig& config) {
  const Formula g = simplify(f);
  if (g.kind() == Formula::Kind::kTrue || g.kind() == Formula::Kind::kFalse) {
    Verdict v;
    v.truth = g.kind() == Formula::Kind::kTrue ? Truth::kTrue : Truth::kFalse;
    v.backend = "simplifier";
    return v;
  }
  return decide_closed(g, config.qe);
}

/// Rational points of the punctured ball |x| < r: the half-radius points on
/// each axis, then seeded random points with denominators up to 16.
std::vector<std::vector<Rational>> ball_samples(size_t n, const Rational& r, unsigned count, uint64_t seed) {
  std::vector<std::vector<Rational>> out;
  for (size_t k = 0; k < n && out.size() < count; ++k) {
    for (int s : {1, -1}) {
      std::vector<Rational> pt(n, Rational(0));
      pt[k] = Rational(s) * r / 2;
      out.push_back(pt);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den_dist(1, 16);
  const Rational r2 = r * r;
  while (out.size() < count) {
    std::vector<Rational> pt;
    Rational norm = 0;
    for (size_t k = 0; k < n; ++k) {
      const int den = den_dist(rng);
      const long span = floor(r * den).get_si();
      std::uniform_int_distribution<long> num_dist(-span, span);
      pt.push_back(make_rational(num_dist(rng), den));
      norm += pt.back() * pt.back();
    }
    if (norm > 0 && norm < r2) out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace

VerificationReport verify_certificate_report(const RlfCertificate& cert, const VectorField& f,
                                             const RlfgConfig& config) {
  VerificationReport report;
  auto fail = [&](std::string why) {
    report.valid = false;
    report.reason = std::move(why);
    return report;
  };
  if (!(cert.templ.state() == f.state())) return fail("template and field use different state variables");
  if (cert.params.size() != cert.templ.parameter_count()) return fail("witness has the wrong number of values");
  if (cert.instance != cert.templ.instantiate(cert.params)) return fail("instance does not match the witness");
  if (cert.radius && *cert.radius <= 0) return fail("radius must be positive");
  if (cert.iteration == 0) return fail("iteration must be at least 1");
  if (!equilibrium_check(f)) return fail("the origin is not an equilibrium");

  const Template inst(cert.instance);
  std::string radius;
  Assignment at_radius;
  if (cert.radius) {
    radius = "r";
    for (int k = 0; inst.state().index_of(radius); ++k) radius = "r" + std::to_string(k);
    at_radius[radius] = *cert.radius;
  }
  FormulaBuilder builder(inst, f, radius);
  const std::vector<std::pair<std::string, Formula>> conditions{
      {"phi1", builder.phi1()},
      {"phi2", builder.phi2()},
      {"transversality", builder.phi_tilde(cert.iteration)}};
  bool all_true = true;
  for (const auto& [name, formula] : conditions) {
    const Verdict v = decide_exact(substitute(formula, at_radius), config);
    report.evidence.push_back({name, v.truth, v.backend});
    if (v.truth != Truth::kTrue && all_true) {
      all_true = false;
      report.reason = name + " is " + to_string(v.truth) +
                      (v.truth == Truth::kUnknown ? " (" + to_string(v.reason) + ")" : "");
    }
  }
  if (!all_true) return report;

  unsigned bound = 0;
  try {
    bound = chain_bound(inst, f, config.chain);
  } catch (const LimitExceededError& e) {
    return fail(std::string("chain bound not computable: ") + e.what());
  }
  LieChain chain(cert.instance, f);
  // Over the whole space the samples are drawn from the ball of radius 4.
  const Rational sample_radius = cert.radius ? *cert.radius : Rational(4);
  for (const auto& pt : ball_samples(f.dimension(), sample_radius, config.transverse_samples, config.falsifier.seed)) {
    ++report.transverse_checked;
    if (in_transverse_set(chain, pt, bound)) {
      ++report.transverse_passed;
    } else if (report.reason.empty()) {
      std::string where;
      for (const auto& v : pt) where += (where.empty() ? "" : ",") + to_string(v);
      report.reason = "sampled point (" + where + ") is not transverse";
    }
  }
  report.valid = report.transverse_passed == report.transverse_checked;
  return report;
}

bool verify_certificate(const RlfCertificate& cert, const VectorField& f, const RlfgConfig& config) {
  return verify_certificate_report(cert, f, config).valid;
}

std::string certificate_to_json(const RlfCertificate& cert) {
  nlohmann::ordered_json j;
  j["template"] = {{"params", cert.templ.params().names()},
                   {"state", cert.templ.state().names()},
                   {"body", cert.templ.body().to_string()}};
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
  for (size_t i = 0; i < cert.params.size(); ++i) witness[cert.templ.params().name(i)] = to_string(cert.params[i]);
  j["witness"] = witness;
  j["radius"] = cert.radius ? nlohmann::ordered_json(to_string(*cert.radius)) : nlohmann::ordered_json(nullptr);
  j["iteration"] = cert.iteration;
  j["instance"] = cert.instance.to_string();
  nlohmann::ordered_json ev = nlohmann::ordered_json::array();
  for (const auto& e : cert.evidence) {
    ev.push_back({{"condition", e.condition}, {"verdict", to_string(e.verdict)}, {"backend", e.backend}});
  }
  j["evidence"] = ev;
  return j.dump(2);
}

RlfCertificate certificate_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error("certificate must be a JSON object");
    for (const auto& [key, _] : j.items()) {
      static const std::set<std::string> known{"template", "witness", "radius", "iteration", "instance", "evidence"};
      if (!known.count(key)) throw Error("unknown certificate key '" + key + "'");
    }
    const auto& t = j.at("template");
    const Ring params(t.at("params").get<std::vector<std::string>>());
    const Ring state(t.at("state").get<std::vector<std::string>>());
    std::vector<std::string> names = params.names();
    names.insert(names.end(), state.names().begin(), state.names().end());
    const Template templ(params, state, parse_poly(t.at("body").get<std::string>(), Ring(names)));
    std::vector<Rational> values;
    for (const auto& name : params.names()) values.push_back(parse_rational(j.at("witness").at(name).get<std::string>()));
    const Polynomial instance = parse_poly(j.at("instance").get<std::string>(), state);
    std::vector<Evidence> evidence;
    if (j.contains("evidence")) {
      for (const auto& e : j.at("evidence")) {
        evidence.push_back({e.at("condition").get<std::string>(), parse_truth(e.at("verdict").get<std::string>()),
                            e.at("backend").get<std::string>()});
      }
    }
    std::optional<Rational> radius;
    if (!j.at("radius").is_null()) radius = parse_rational(j.at("radius").get<std::string>());
    return RlfCertificate{templ,
                          values,
                          radius,
                          j.at("iteration").get<unsigned>(),
                          std::move(evidence),
                          instance};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace rlfgen
