#include <gtest/gtest.h>

#include "rlfgen/rlfg.h"
#include "test_support.h"

namespace rlfgen {
namespace {

using test::P;
using test::Q;

VectorField paper_field() { return test::field({"x", "y"}, {"-x + y^2", "-x*y"}); }

Template quadratic_template() {
  return Template(Ring({"a"}), Ring({"x", "y"}), P("x^2 + a*y^2", {"a", "x", "y"}));
}

Template full_quadratic_template() {
  return Template(Ring({"a", "b"}), Ring({"x", "y"}), P("x^2 + a*x*y + b*y^2", {"a", "b", "x", "y"}));
}

RlfgConfig grid_config() {
  RlfgConfig c;
  c.grid = {parse_grid_axis("a:-2..2:1/2")};
  c.radii = {Q(1)};
  return c;
}

RlfgConfig parametric_config() {
  RlfgConfig c;
  c.mode = SearchMode::kParametric;
  c.fixed_radius = Q(1);
  return c;
}

std::vector<Rational> params_of(const std::vector<Candidate>& cs) {
  std::vector<Rational> out;
  for (const auto& c : cs) out.push_back(c.params.at(0));
  return out;
}

RlfCertificate certificate_for(const std::string& instance, const Rational& a, unsigned iteration) {
  return RlfCertificate{quadratic_template(), {a}, Q(1), iteration, {}, P(instance, {"x", "y"})};
}

TEST(GridAxisTest, ParsesRangeAndStep) {
  const GridAxis axis = parse_grid_axis("a:-2..2:1/2");
  EXPECT_EQ(axis.param, "a");
  EXPECT_EQ(axis.values().size(), 9u);
  EXPECT_EQ(axis.values().front(), Q(-2));
  EXPECT_EQ(axis.values().back(), Q(2));
  EXPECT_EQ(parse_grid_axis("b:0..3").values(), (std::vector<Rational>{Q(0), Q(1), Q(2), Q(3)}));
}

TEST(GridAxisTest, RejectsMalformedAxes) {
  EXPECT_THROW(parse_grid_axis("a-2..2"), Error);
  EXPECT_THROW(parse_grid_axis(":0..1"), Error);
  EXPECT_THROW(parse_grid_axis("a:2..1"), Error);
  EXPECT_THROW(parse_grid_axis("a:0..1:0"), Error);
  EXPECT_THROW(parse_grid_axis("a:0..1:-1"), Error);
}

TEST(SearchModeTest, ParsesNames) {
  EXPECT_EQ(parse_search_mode("grid"), SearchMode::kGrid);
  EXPECT_EQ(parse_search_mode("parametric"), SearchMode::kParametric);
  EXPECT_EQ(to_string(SearchMode::kParametric), "parametric");
  EXPECT_THROW(parse_search_mode("exact"), Error);
}

TEST(RlfgSearchTest, RejectsInvalidInputs) {
  const VectorField shifted = test::field({"x", "y"}, {"-x + 1", "-y"});
  EXPECT_THROW(RlfgSearch(shifted, quadratic_template(), {}), Error);
  const VectorField other_state = test::field({"u", "v"}, {"-u", "-v"});
  EXPECT_THROW(RlfgSearch(other_state, quadratic_template(), {}), Error);
  RlfgConfig bad_radius;
  bad_radius.radii = {Q(0)};
  EXPECT_THROW(RlfgSearch(paper_field(), quadratic_template(), bad_radius), Error);
  RlfgConfig bad_axis;
  bad_axis.grid = {parse_grid_axis("c:0..1")};
  EXPECT_THROW(RlfgSearch(paper_field(), quadratic_template(), bad_axis), Error);
  RlfgConfig both = parametric_config();
  both.whole_space = true;
  EXPECT_THROW(RlfgSearch(paper_field(), quadratic_template(), both), Error);
}

TEST(RlfgGridTest, FindsDiagonalQuadraticAtThirdIteration) {
  const Outcome o = run(paper_field(), quadratic_template(), grid_config());
  ASSERT_EQ(o.kind, Outcome::Kind::kFound) << o.reason;
  EXPECT_EQ(o.exit, Exit::kFound);
  EXPECT_EQ(o.certificate->params, std::vector<Rational>{Q(1)});
  EXPECT_EQ(o.certificate->radius, Q(1));
  EXPECT_EQ(o.certificate->iteration, 3u);
  EXPECT_EQ(o.certificate->instance, P("x^2 + y^2", {"x", "y"}));
  EXPECT_TRUE(verify_certificate(*o.certificate, paper_field()));
  EXPECT_LE(o.iterations, o.chain_bound);
}

TEST(RlfgGridTest, SurvivorSetsOfTheDiagonalRun) {
  const Outcome o = run(paper_field(), quadratic_template(), grid_config());
  ASSERT_EQ(o.survivors.size(), 3u);
  EXPECT_EQ(params_of(o.survivors[0]), (std::vector<Rational>{Q(1, 2), Q(1), Q(3, 2), Q(2)}));
  EXPECT_EQ(params_of(o.survivors[1]), std::vector<Rational>{Q(1)});
  EXPECT_EQ(params_of(o.survivors[2]), std::vector<Rational>{Q(1)});
}

TEST(RlfgGridTest, StepwiseStateMatchesTheRun) {
  RlfgSearch search(paper_field(), quadratic_template(), grid_config());
  ASSERT_FALSE(search.start());
  EXPECT_EQ(search.chain_bound(), 4u);
  EXPECT_EQ(search.last_iteration(), 4u);
  EXPECT_EQ(search.state().iteration, 0u);
  ASSERT_FALSE(search.step());
  EXPECT_EQ(search.state().iteration, 1u);
  EXPECT_EQ(params_of(search.state().survivors.back()), std::vector<Rational>{Q(1)});
  ASSERT_FALSE(search.step());
  const auto o = search.step();
  ASSERT_TRUE(o);
  EXPECT_EQ(o->kind, Outcome::Kind::kFound);
  EXPECT_EQ(search.state().iteration, 3u);
}

TEST(RlfgGridTest, ExhaustionIsUnknownNotNone) {
  const Template linear(Ring({"a"}), Ring({"x", "y"}), P("a*x", {"a", "x", "y"}));
  const Outcome o = run(paper_field(), linear, {});
  EXPECT_EQ(o.kind, Outcome::Kind::kUnknown);
  EXPECT_EQ(o.exit, Exit::kRes0Empty);
  EXPECT_NE(o.reason.find("grid exhausted"), std::string::npos);

  const VectorField saddle = test::field({"x", "y"}, {"x", "-y"});
  const Outcome s = run(saddle, quadratic_template(), grid_config());
  EXPECT_EQ(s.kind, Outcome::Kind::kUnknown);
  EXPECT_EQ(s.exit, Exit::kResEmpty);
}

TEST(RlfgGridTest, WholeSpaceGridUsesNoRadius) {
  RlfgConfig c = grid_config();
  c.whole_space = true;
  const VectorField stable = test::field({"x", "y"}, {"-x", "-y"});
  const Outcome o = run(stable, quadratic_template(), c);
  ASSERT_EQ(o.kind, Outcome::Kind::kFound) << o.reason;
  EXPECT_FALSE(o.certificate->radius);
  EXPECT_EQ(o.certificate->iteration, 1u);
  EXPECT_TRUE(verify_certificate(*o.certificate, stable));
}

TEST(RlfgParametricTest, LinearTemplateHasEmptyInitialSet) {
  const Template linear(Ring({"a"}), Ring({"x", "y"}), P("a*x", {"a", "x", "y"}));
  RlfgConfig c;
  c.mode = SearchMode::kParametric;
  const Outcome o = run(paper_field(), linear, c);
  EXPECT_EQ(o.kind, Outcome::Kind::kNoneForTemplate);
  EXPECT_EQ(o.exit, Exit::kRes0Empty);
  EXPECT_EQ(o.iterations, 0u);
}

TEST(RlfgParametricTest, SaddleEmptiesTheSetAtFirstIteration) {
  const VectorField saddle = test::field({"x", "y"}, {"x", "-y"});
  const Outcome o = run(saddle, quadratic_template(), parametric_config());
  EXPECT_EQ(o.kind, Outcome::Kind::kNoneForTemplate);
  EXPECT_EQ(o.exit, Exit::kResEmpty);
  EXPECT_EQ(o.iterations, 1u);
  ASSERT_EQ(o.res.size(), 2u);
  EXPECT_EQ(o.res[1].kind(), Formula::Kind::kFalse);
}

TEST(RlfgParametricTest, LineOfEquilibriaReachesTheFixedPoint) {
  const VectorField decay = test::field({"x", "y"}, {"-x", "0"});
  const Outcome o = run(decay, quadratic_template(), parametric_config());
  EXPECT_EQ(o.kind, Outcome::Kind::kNoneForTemplate);
  EXPECT_EQ(o.exit, Exit::kFixedPoint);
  EXPECT_EQ(o.chain_bound, 1u);
  EXPECT_EQ(o.iterations, 1u);
}

TEST(RlfgParametricTest, FreeRadiusFindsAStrictLyapunovFunction) {
  const VectorField stable = test::field({"x", "y"}, {"-x", "-y"});
  RlfgConfig c;
  c.mode = SearchMode::kParametric;
  const Outcome o = run(stable, quadratic_template(), c);
  ASSERT_EQ(o.kind, Outcome::Kind::kFound) << o.reason;
  EXPECT_EQ(o.certificate->params, std::vector<Rational>{Q(1)});
  EXPECT_EQ(o.certificate->iteration, 1u);
  ASSERT_TRUE(o.solution);
  EXPECT_TRUE(verify_certificate(*o.certificate, stable));
}

TEST(RlfgParametricTest, QuadraticStrictSearchHasNoSolutionInThePlane) {
  RlfgConfig c;
  c.mode = SearchMode::kParametric;
  c.whole_space = true;
  c.max_order = 1;
  const Outcome o = run(paper_field(), full_quadratic_template(), c);
  EXPECT_EQ(o.kind, Outcome::Kind::kNoneForTemplate) << o.reason;
  EXPECT_EQ(o.exit, Exit::kOrderCap);
  EXPECT_EQ(o.iterations, 1u);
  ASSERT_FALSE(o.res.empty());
  EXPECT_EQ(o.res[0].to_string(), "-a^2 + 4*b > 0");
}

TEST(RlfgParametricTest, WholeSpaceChainOnThePaperSystem) {
  RlfgConfig c;
  c.mode = SearchMode::kParametric;
  c.whole_space = true;
  c.max_order = 2;
  const Outcome o = run(paper_field(), quadratic_template(), c);
  EXPECT_EQ(o.kind, Outcome::Kind::kNoneForTemplate) << o.reason;
  EXPECT_EQ(o.exit, Exit::kOrderCap);
  ASSERT_EQ(o.res.size(), 3u);
  EXPECT_EQ(o.res[0].to_string(), "a > 0");
  const Assignment at_one{{"a", Q(1)}};
  const Assignment at_two{{"a", Q(2)}};
  EXPECT_EQ(simplify(substitute(o.res[2], at_one)).kind(), Formula::Kind::kTrue);
  EXPECT_EQ(simplify(substitute(o.res[2], at_two)).kind(), Formula::Kind::kFalse);
}

TEST(RlfgModeTest, GridWitnessSatisfiesTheParametricSolution) {
  const VectorField stable = test::field({"x", "y"}, {"-x", "-1/2*y"});
  RlfgConfig grid = grid_config();
  const Outcome g = run(stable, quadratic_template(), grid);
  ASSERT_EQ(g.kind, Outcome::Kind::kFound) << g.reason;
  const Outcome p = run(stable, quadratic_template(), parametric_config());
  ASSERT_EQ(p.kind, Outcome::Kind::kFound) << p.reason;
  ASSERT_TRUE(p.solution);
  const Assignment at{{"a", g.certificate->params[0]}};
  EXPECT_EQ(simplify(substitute(*p.solution, at)).kind(), Formula::Kind::kTrue);
}

TEST(RlfgModeTest, GridSurvivorsSatisfyTheParametricSets) {
  RlfgConfig grid = grid_config();
  grid.whole_space = true;
  grid.max_order = 2;
  const Outcome g = run(paper_field(), quadratic_template(), grid);
  RlfgConfig param;
  param.mode = SearchMode::kParametric;
  param.whole_space = true;
  param.max_order = 2;
  const Outcome p = run(paper_field(), quadratic_template(), param);
  ASSERT_EQ(g.survivors.size(), p.res.size());
  for (size_t i = 0; i < g.survivors.size(); ++i) {
    for (const auto& c : g.survivors[i]) {
      const Assignment at{{"a", c.params[0]}};
      EXPECT_EQ(simplify(substitute(p.res[i], at)).kind(), Formula::Kind::kTrue) << i;
    }
  }
}

TEST(CertificateTest, DiagonalCertificateVerifies) {
  const VerificationReport r = verify_certificate_report(certificate_for("x^2 + y^2", Q(1), 3), paper_field());
  EXPECT_TRUE(r.valid) << r.reason;
  ASSERT_EQ(r.evidence.size(), 3u);
  for (const auto& e : r.evidence) EXPECT_EQ(e.verdict, Truth::kTrue) << e.condition;
  EXPECT_EQ(r.transverse_checked, 64u);
  EXPECT_EQ(r.transverse_passed, 64u);
}

TEST(CertificateTest, DegenerateTemplateFailsPositivity) {
  const VerificationReport r = verify_certificate_report(certificate_for("x^2", Q(0), 3), paper_field());
  EXPECT_FALSE(r.valid);
  ASSERT_GE(r.evidence.size(), 2u);
  EXPECT_EQ(r.evidence[1].condition, "phi2");
  EXPECT_EQ(r.evidence[1].verdict, Truth::kFalse);
}

TEST(CertificateTest, TamperedWitnessIsRejected) {
  RlfCertificate cert = certificate_for("x^2 + y^2", Q(1), 3);
  cert.params = {Q(2)};
  EXPECT_FALSE(verify_certificate(cert, paper_field()));
  cert = certificate_for("x^2 + y^2", Q(1), 3);
  cert.radius = Q(-1);
  EXPECT_FALSE(verify_certificate(cert, paper_field()));
  cert = certificate_for("x^2 + y^2", Q(1), 0);
  EXPECT_FALSE(verify_certificate(cert, paper_field()));
}

TEST(CertificateTest, TooShallowIterationFails) {
  const VerificationReport r = verify_certificate_report(certificate_for("x^2 + y^2", Q(1), 1), paper_field());
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.reason.find("transversality"), std::string::npos);
}

TEST(CertificateTest, JsonRoundTripIsExact) {
  RlfCertificate cert = certificate_for("x^2 + 3/7*y^2", Q(3, 7), 2);
  cert.templ = quadratic_template();
  cert.evidence = {{"phi1", Truth::kTrue, "simplifier"}, {"theta2", Truth::kUnknown, "smt"}};
  const RlfCertificate back = certificate_from_json(certificate_to_json(cert));
  EXPECT_EQ(back.params, cert.params);
  EXPECT_EQ(back.radius, cert.radius);
  EXPECT_EQ(back.iteration, cert.iteration);
  EXPECT_EQ(back.instance.to_string(), cert.instance.to_string());
  EXPECT_EQ(back.templ.body().to_string(), cert.templ.body().to_string());
  EXPECT_EQ(back.evidence, cert.evidence);

  cert.radius.reset();
  EXPECT_FALSE(certificate_from_json(certificate_to_json(cert)).radius);
}

TEST(CertificateTest, MalformedJsonIsAnError) {
  EXPECT_THROW(certificate_from_json("{"), Error);
  EXPECT_THROW(certificate_from_json("{\"template\": {}}"), Error);
}

}  // namespace
}  // namespace rlfgen
