#include <random>

#include <gtest/gtest.h>

#include "rlfgen/dynamics.h"
#include "test_support.h"

namespace rlfgen {
namespace {

using test::P;
using test::Q;

const std::vector<std::string> kXY{"x", "y"};

TEST(LieDerivativeTest, LinearSaddleChain) {
  const VectorField f = test::field(kXY, {"-x", "y"});
  const Polynomial p = P("x + y^2", kXY);
  EXPECT_EQ(lie_derivative(p, f, 0), P("x + y^2", kXY));
  EXPECT_EQ(lie_derivative(p, f, 1), P("-x + 2*y^2", kXY));
  EXPECT_EQ(lie_derivative(p, f, 2), P("x + 4*y^2", kXY));
  EXPECT_EQ(lie_derivative(p, f, 3), P("-x + 8*y^2", kXY));
}

TEST(LieDerivativeTest, ParametricTemplate) {
  const VectorField f = test::field(kXY, {"-x + y^2", "-x*y"});
  const Ring axy({"a", "x", "y"});
  const Polynomial p = P("x^2 + a*y^2", axy);
  EXPECT_EQ(lie_derivative(p, f, 1), P("-2*x^2 + 2*(1 - a)*x*y^2", axy));
  EXPECT_EQ(lie_derivative(p, f, 2),
            P("2*(2*a*x^2*y^2 + a*x*y^2 - a*y^4 - 2*x^2*y^2 + 2*x^2 - 3*x*y^2 + y^4)", axy));
  EXPECT_EQ(lie_derivative(p, f, 3),
            P("-2*(4*a*x^3*y^2 + 6*a*x^2*y^2 - 8*a*x*y^4 + a*x*y^2 - a*y^4 - 4*x^3*y^2"
              " - 10*x^2*y^2 + 4*x^2 + 8*x*y^4 - 7*x*y^2 + 3*y^4)",
              axy));
}

TEST(LieDerivativeTest, MissingStateVariable) {
  const VectorField f = test::field(kXY, {"-x", "y"});
  EXPECT_THROW(lie_derivative(P("x", {"x"}), f, 1), UnknownVariableError);
}

TEST(LieChainTest, MatchesDirectComputation) {
  const VectorField f = test::field(kXY, {"-x + y^2", "-x*y"});
  LieChain chain(P("x^2 + y^2", kXY), f);
  EXPECT_EQ(chain.get(3), lie_derivative(chain.base(), f, 3));
  EXPECT_EQ(chain.computed(), 4u);
  EXPECT_EQ(chain.get(1), lie_derivative(chain.base(), f, 1));
}

TEST(PointwiseRankTest, LinearSaddle) {
  const VectorField f = test::field(kXY, {"-x", "y"});
  const Polynomial p = P("x + y^2", kXY);
  EXPECT_TRUE(pointwise_rank(p, f, {Q(0), Q(0)}, 2).is_infinite());
  EXPECT_EQ(pointwise_rank(p, f, {Q(1), Q(1)}, 2), Rank::finite(1));
  EXPECT_EQ(pointwise_rank(p, f, {Q(2), Q(1)}, 2), Rank::finite(2));
  EXPECT_EQ(pointwise_rank(p, f, {Q(2), Q(1)}, 2).to_string(), "2");
  EXPECT_EQ(Rank::infinite().to_string(), "inf");
}

TEST(PointwiseRankTest, Errors) {
  const VectorField f = test::field(kXY, {"-x", "y"});
  EXPECT_THROW(pointwise_rank(P("x", kXY), f, {Q(0), Q(0)}, 0), Error);
  EXPECT_THROW(pointwise_rank(P("x", kXY), f, {Q(0)}, 2), Error);
  const Polynomial param = P("a*x", {"a", "x", "y"});
  EXPECT_THROW(pointwise_rank(param, f, {Q(1), Q(1)}, 2), Error);
  EXPECT_THROW(Rank::finite(0), Error);
  EXPECT_THROW(Rank::infinite().value(), Error);
}

TEST(TransverseSetTest, Examples) {
  const VectorField saddle = test::field(kXY, {"-x", "y"});
  EXPECT_FALSE(in_transverse_set(P("x + y^2", kXY), saddle, {Q(1), Q(1)}, 2));

  const VectorField f = test::field(kXY, {"-x + y^2", "-x*y"});
  const Polynomial v = P("x^2 + y^2", kXY);
  EXPECT_EQ(evaluate(lie_derivative(v, f, 3), test::point({Q(0), Q(1)})), Q(-4));
  EXPECT_TRUE(in_transverse_set(v, f, {Q(0), Q(1)}, 3));
  EXPECT_FALSE(in_transverse_set(v, f, {Q(0), Q(0)}, 3));
}

TEST(EquilibriumTest, Examples) {
  EXPECT_TRUE(equilibrium_check(test::field(kXY, {"-x + y^2", "-x*y"})));
  EXPECT_TRUE(equilibrium_check(test::field(kXY, {"-x", "y"})));
  EXPECT_FALSE(equilibrium_check(test::field(kXY, {"x + 1", "y"})));
}

TEST(TemplateTest, Instantiate) {
  const Template t(Ring({"a"}), Ring(kXY), P("x^2 + a*y^2", {"a", "x", "y"}));
  EXPECT_EQ(t.instantiate({Q(1)}), P("x^2 + y^2", kXY));
  EXPECT_EQ(t.instantiate({Q(0)}), P("x^2", kXY));
  EXPECT_THROW(t.instantiate(std::vector<Rational>{}), Error);
  EXPECT_THROW(Template(Ring({"x"}), Ring(kXY), P("x", kXY)), Error);
}

class LiePropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{77};
  Ring state_{kXY};
  Ring full_{std::vector<std::string>{"a", "x", "y"}};

  VectorField random_field() {
    std::vector<Polynomial> comps;
    for (int i = 0; i < 2; ++i) comps.push_back(test::random_polynomial(rng_, state_, 3, 3));
    return VectorField(state_, comps);
  }
};

TEST_F(LiePropertyTest, LinearityLeibnizComposition) {
  for (int trial = 0; trial < 40; ++trial) {
    const VectorField f = random_field();
    const Polynomial p = test::random_polynomial(rng_, state_, 3, 4);
    const Polynomial q = test::random_polynomial(rng_, state_, 3, 4);
    const Rational alpha = test::random_rational(rng_), beta = test::random_rational(rng_);
    EXPECT_EQ(lie_derivative(alpha * p + beta * q, f, 1),
              alpha * lie_derivative(p, f, 1) + beta * lie_derivative(q, f, 1));
    EXPECT_EQ(lie_derivative(p * q, f, 1),
              p * lie_derivative(q, f, 1) + q * lie_derivative(p, f, 1));
    EXPECT_EQ(lie_derivative(p, f, 3), lie_derivative(lie_derivative(p, f, 1), f, 2));
  }
}

TEST_F(LiePropertyTest, ParameterCoherence) {
  for (int trial = 0; trial < 40; ++trial) {
    const VectorField f = random_field();
    const Polynomial p = test::random_polynomial(rng_, full_, 3, 5);
    const Assignment u{{"a", test::random_rational(rng_)}};
    EXPECT_EQ(lie_derivative(substitute(p, u), f, 1), substitute(lie_derivative(p, f, 1), u));
  }
}

}  // namespace
}  // namespace rlfgen
