#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rlfgen/cli.h"
#include "rlfgen/ideals.h"
#include "rlfgen/parser.h"
#include "rlfgen/simcheck.h"

namespace rlfgen {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string system;
  bool json = false;
  std::optional<std::string> backend;
  std::optional<std::uint64_t> seed;
  std::optional<long long> budget_ms;
  std::optional<unsigned> max_order;
  std::string poly;
  unsigned order = 1;
  std::string at;
  std::optional<unsigned> bound;
  std::optional<std::string> mode;
  std::vector<std::string> grid;
  std::optional<std::string> radius;
  bool whole_space = false;
  std::string certificate;
  std::string out_path;
  double step = 1e-3;
  double horizon = 20;
};

/// Polynomials for lie, rank and nbound may use template parameters when the
/// system has a template.
Ring expression_ring(const SystemDefinition& sys) {
  if (sys.templ) return sys.templ->body().ring();
  return sys.field.state();
}

void apply_overrides(const Options& o, RlfgConfig& config) {
  if (o.backend) config.qe.backend = parse_backend(*o.backend);
  if (o.seed) config.falsifier.seed = *o.seed;
  if (o.budget_ms) {
    if (*o.budget_ms <= 0) throw Error("--budget-ms must be positive");
    config.qe.budget = std::chrono::milliseconds(*o.budget_ms);
  }
  if (o.max_order) config.max_order = *o.max_order;
  if (o.mode) config.mode = parse_search_mode(*o.mode);
  if (!o.grid.empty()) {
    config.grid.clear();
    for (const auto& g : o.grid) config.grid.push_back(parse_grid_axis(g));
  }
  if (o.whole_space) config.whole_space = true;
  if (o.radius) {
    const std::vector<Rational> radii = parse_rational_list(*o.radius);
    if (radii.empty()) throw Error("--radius needs at least one value");
    if (config.mode == SearchMode::kParametric) {
      if (radii.size() != 1) throw Error("parametric mode takes a single fixed --radius");
      config.fixed_radius = radii.front();
    } else {
      config.radii = radii;
    }
  }
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find('/') != std::string::npos) {
      out.push_back(parse_rational(item).get_d());
      continue;
    }
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error("'" + item + "' is not a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw Error("'" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

std::string render_rank(const Rank& r) { return r.is_infinite() ? "∞" : r.to_string(); }

int exit_for(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::kFound: return kExitSuccess;
    case Outcome::Kind::kNoneForTemplate: return kExitNegative;
    case Outcome::Kind::kUnknown: return kExitUnknown;
  }
  return kExitUnknown;
}

const Template& require_template(const SystemDefinition& sys) {
  if (!sys.templ) throw Error("the system file has no 'template'");
  return *sys.templ;
}

int cmd_lie(const Options& o, std::ostream& out) {
  const SystemDefinition sys = load_system(o.system);
  const Polynomial p = parse_poly(o.poly, expression_ring(sys));
  const Polynomial l = lie_derivative(p, sys.field, o.order);
  if (o.json) {
    out << Json{{"order", o.order}, {"lie", l.to_string()}}.dump() << '\n';
  } else {
    out << l.to_string() << '\n';
  }
  return kExitSuccess;
}

int cmd_nbound(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemDefinition sys = load_system(o.system);
  const Polynomial p = parse_poly(o.poly, expression_ring(sys));
  const Template t = sys.templ ? Template(sys.templ->params(), sys.field.state(), p) : Template(p);
  ChainReport report;
  try {
    report = chain_bound_report(t, sys.field, sys.config.chain);
  } catch (const LimitExceededError& e) {
    err << "unknown: " << e.what() << '\n';
    return kExitUnknown;
  }
  if (o.json) {
    Json chain = Json::array();
    for (const auto& c : report.chain) chain.push_back(c.to_string());
    out << Json{{"bound", report.bound}, {"basis_sizes", report.basis_sizes}, {"chain", chain}}.dump() << '\n';
  } else {
    out << report.bound << '\n';
  }
  return kExitSuccess;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemDefinition sys = load_system(o.system);
  const Polynomial p = parse_poly(o.poly, sys.field.state());
  const std::vector<Rational> at = parse_rational_list(o.at);
  if (at.size() != sys.field.dimension()) throw Error("--at needs one value per state variable");
  unsigned bound = 0;
  if (o.bound) {
    bound = *o.bound;
  } else {
    try {
      bound = chain_bound(Template(p), sys.field, sys.config.chain);
    } catch (const LimitExceededError& e) {
      err << "unknown: " << e.what() << '\n';
      return kExitUnknown;
    }
  }
  const Rank r = pointwise_rank(p, sys.field, at, bound);
  if (o.json) {
    Json j{{"bound", bound}};
    j["rank"] = r.is_infinite() ? Json(nullptr) : Json(r.value());
    out << j.dump() << '\n';
  } else {
    out << render_rank(r) << '\n';
  }
  return kExitSuccess;
}

int cmd_phi(const Options& o, std::ostream& out) {
  const SystemDefinition sys = load_system(o.system);
  RlfgConfig config = sys.config;
  apply_overrides(o, config);
  FormulaBuilder b(require_template(sys), sys.field, config.whole_space ? std::string() : std::string("r"));
  if (o.order == 0) throw Error("--order must be at least 1");
  const std::vector<std::pair<std::string, Formula>> parts{
      {"phi1", b.phi1()}, {"phi2", b.phi2()}, {"phi3", b.phi3(o.order)}, {"phi", b.phi(o.order)}};
  if (o.json) {
    Json j = Json::object();
    for (const auto& [name, f] : parts) j[name] = f.to_string();
    out << j.dump(2) << '\n';
  } else {
    for (const auto& [name, f] : parts) out << name << ": " << f.to_string() << '\n';
  }
  return kExitSuccess;
}

Json outcome_json(const Outcome& o) {
  Json j{{"outcome", to_string(o.kind)}, {"exit", to_string(o.exit)}, {"reason", o.reason},
         {"iterations", o.iterations}, {"chain_bound", o.chain_bound}};
  if (o.certificate) j["certificate"] = Json::parse(certificate_to_json(*o.certificate));
  return j;
}

int cmd_find(const Options& o, std::ostream& out) {
  const SystemDefinition sys = load_system(o.system);
  RlfgConfig config = sys.config;
  apply_overrides(o, config);
  const Outcome outcome = run(sys.field, require_template(sys), config);
  if (outcome.certificate && !o.out_path.empty()) {
    std::ofstream file(o.out_path);
    if (!file) throw Error("cannot write '" + o.out_path + "'");
    file << certificate_to_json(*outcome.certificate) << '\n';
  }
  if (o.json) {
    out << outcome_json(outcome).dump(2) << '\n';
    return exit_for(outcome.kind);
  }
  out << to_string(outcome.kind);
  if (outcome.kind != Outcome::Kind::kFound) out << " (" << to_string(outcome.exit) << ")";
  out << '\n';
  if (!outcome.reason.empty()) out << "reason: " << outcome.reason << '\n';
  out << "iterations: " << outcome.iterations << " of chain bound " << outcome.chain_bound << '\n';
  if (const auto& c = outcome.certificate) {
    const Template& t = c->templ;
    for (size_t i = 0; i < c->params.size(); ++i) {
      out << t.params().name(i) << " = " << to_string(c->params[i]) << '\n';
    }
    out << "radius: " << (c->radius ? to_string(*c->radius) : std::string("whole space")) << '\n';
    out << "iteration: " << c->iteration << '\n';
    out << "instance: " << c->instance.to_string() << '\n';
  }
  return exit_for(outcome.kind);
}

int cmd_check(const Options& o, std::ostream& out) {
  const SystemDefinition sys = load_system(o.system);
  RlfgConfig config = sys.config;
  apply_overrides(o, config);
  std::ifstream in(o.certificate);
  if (!in) throw Error("cannot open certificate '" + o.certificate + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const RlfCertificate cert = certificate_from_json(buf.str());
  const VerificationReport r = verify_certificate_report(cert, sys.field, config);
  const bool undecided = std::any_of(r.evidence.begin(), r.evidence.end(),
                                     [](const Evidence& e) { return e.verdict == Truth::kUnknown; });
  if (o.json) {
    Json ev = Json::array();
    for (const auto& e : r.evidence) {
      ev.push_back({{"condition", e.condition}, {"verdict", to_string(e.verdict)}, {"backend", e.backend}});
    }
    out << Json{{"valid", r.valid},
                {"reason", r.reason},
                {"evidence", ev},
                {"transverse_checked", r.transverse_checked},
                {"transverse_passed", r.transverse_passed}}
               .dump(2)
        << '\n';
  } else {
    out << (r.valid ? "valid" : "invalid") << '\n';
    for (const auto& e : r.evidence) out << e.condition << ": " << to_string(e.verdict) << " (" << e.backend << ")\n";
    if (r.transverse_checked) {
      out << "sampled transverse points: " << r.transverse_passed << "/" << r.transverse_checked << '\n';
    }
    if (!r.reason.empty()) out << "reason: " << r.reason << '\n';
  }
  if (r.valid) return kExitSuccess;
  return undecided ? kExitUnknown : kExitNegative;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemDefinition sys = load_system(o.system);
  const std::vector<double> x0 = parse_double_list(o.at);
  const Trajectory tr = simulate(sys.field, x0, o.step, o.horizon);
  if (tr.diverged) err << "warning: trajectory left the divergence bound at t = " << tr.times.back() << '\n';
  if (o.out_path.empty()) {
    write_csv(tr, sys.field.state(), out);
    return kExitSuccess;
  }
  std::ofstream file(o.out_path);
  if (!file) throw Error("cannot write '" + o.out_path + "'");
  write_csv(tr, sys.field.state(), file);
  const auto& last = tr.states.back();
  if (o.json) {
    out << Json{{"steps", tr.states.size() - 1}, {"final_time", tr.times.back()}, {"final_state", last},
                {"diverged", tr.diverged}}
               .dump()
        << '\n';
  } else {
    out << "steps: " << tr.states.size() - 1 << '\n' << "t = " << tr.times.back() << ':';
    for (double v : last) out << ' ' << v;
    out << '\n';
  }
  return kExitSuccess;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--system", o.system, "System definition (JSON)")->required();
  cmd->add_flag("--json", o.json, "Machine-readable output");
}

void add_search(CLI::App* cmd, Options& o) {
  cmd->add_option("--backend", o.backend, "cad, smt or auto");
  cmd->add_option("--seed", o.seed, "Seed for sampling");
  cmd->add_option("--budget-ms", o.budget_ms, "Time budget per decision");
  cmd->add_option("--max-order", o.max_order, "Cap on the Lie order");
  cmd->add_flag("--whole-space", o.whole_space, "Search the whole state space instead of a ball");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Relaxed Lyapunov function search for polynomial vector fields", "rlfgen");
  app.require_subcommand(1);
  Options o;

  auto* lie = app.add_subcommand("lie", "Print the Lie derivative of a polynomial");
  add_common(lie, o);
  lie->add_option("--poly", o.poly, "Polynomial expression")->required();
  lie->add_option("--order", o.order, "Derivative order")->capture_default_str();

  auto* rank = app.add_subcommand("rank", "Pointwise rank at a rational point");
  add_common(rank, o);
  rank->add_option("--poly", o.poly, "Polynomial expression")->required();
  rank->add_option("--at", o.at, "Comma separated rationals")->required();
  rank->add_option("--bound", o.bound, "Order cutoff (default: the chain bound)");

  auto* nbound = app.add_subcommand("nbound", "Chain bound of a polynomial");
  add_common(nbound, o);
  nbound->add_option("--poly", o.poly, "Polynomial expression")->required();

  auto* phi = app.add_subcommand("phi", "Print the existence formulas for the template");
  add_common(phi, o);
  phi->add_option("--order", o.order, "Lie order of the transversality part")->capture_default_str();
  phi->add_flag("--whole-space", o.whole_space, "Drop the radius");

  auto* find = app.add_subcommand("find", "Search for a relaxed Lyapunov function");
  add_common(find, o);
  add_search(find, o);
  find->add_option("--mode", o.mode, "grid or parametric");
  find->add_option("--grid", o.grid, "Parameter axis name:lo..hi[:step]")->take_all();
  find->add_option("--radius", o.radius, "Radius candidates (grid) or the fixed radius (parametric)");
  find->add_option("--out", o.out_path, "Write the certificate to this file");

  auto* check = app.add_subcommand("check", "Verify a certificate");
  add_common(check, o);
  add_search(check, o);
  check->add_option("--certificate", o.certificate, "Certificate (JSON)")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the system with RK4");
  add_common(simulate_cmd, o);
  simulate_cmd->add_option("--at", o.at, "Initial state, comma separated")->required();
  simulate_cmd->add_option("--step", o.step, "Step size")->capture_default_str();
  simulate_cmd->add_option("--horizon", o.horizon, "Final time")->capture_default_str();
  simulate_cmd->add_option("--out", o.out_path, "Write the CSV here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (lie->parsed()) return cmd_lie(o, out);
    if (rank->parsed()) return cmd_rank(o, out, err);
    if (nbound->parsed()) return cmd_nbound(o, out, err);
    if (phi->parsed()) return cmd_phi(o, out);
    if (find->parsed()) return cmd_find(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rlfgen
