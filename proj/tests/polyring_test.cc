#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "rlfgen/algebra.h"
#include "rlfgen/polynomial.h"
#include "test_support.h"

namespace rlfgen {
namespace {

using test::P;
using test::Q;

const std::vector<std::string> kXY{"x", "y"};

TEST(RationalTest, CanonicalForm) {
  const Rational q = parse_rational("-6/8");
  EXPECT_EQ(to_string(q), "-3/4");
  EXPECT_EQ(q.get_den(), 4);
  EXPECT_EQ(to_string(parse_rational("10/5")), "2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational("6/-8"), Error);
}

TEST(RationalTest, SimplestBetween) {
  EXPECT_EQ(simplest_between(Q(0), Q(1)), Q(1, 2));
  EXPECT_EQ(simplest_between(Q(-1, 3), Q(5, 2)), Q(0));
  EXPECT_EQ(simplest_between(Q(1, 3), Q(1, 2)), Q(2, 5));
  EXPECT_EQ(simplest_between(Q(7, 2), Q(19, 4)), Q(4));
  EXPECT_EQ(simplest_between(Q(-5, 2), Q(-7, 3)), Q(-12, 5));
}

TEST(PolynomialTest, AddExamples) {
  EXPECT_EQ(add(P("x + y^2", kXY), P("-x + 2*y^2", kXY)), P("3*y^2", kXY));
  const Polynomial p = P("x + y^2", kXY);
  EXPECT_EQ(add(p, Polynomial(p.ring())), p);
  EXPECT_EQ(add(P("-x + 2*y^2", kXY), P("x + 4*y^2", kXY)), P("6*y^2", kXY));
}

TEST(PolynomialTest, MulExamples) {
  EXPECT_EQ(mul(P("x + y", kXY), P("x - y", kXY)), P("x^2 - y^2", kXY));
  const Polynomial p = P("x + y^2", kXY);
  EXPECT_EQ(mul(p, P("1", kXY)), p);
  EXPECT_EQ(mul(P("2*y", kXY), P("y", kXY)), P("2*y^2", kXY));
}

TEST(PolynomialTest, RingMismatch) {
  EXPECT_THROW(add(P("x", {"x"}), P("y", {"y"})), RingMismatchError);
  EXPECT_THROW(mul(P("x", {"x"}), P("y", {"y"})), RingMismatchError);
}

TEST(PolynomialTest, ZeroCoefficientsDropped) {
  const Polynomial p = P("1/2*x - 1/2*x", kXY);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.term_count(), 0u);
  EXPECT_EQ(p.to_string(), "0");
}

TEST(PolynomialTest, PartialDerivative) {
  const Polynomial p = P("x + y^2", kXY);
  EXPECT_EQ(partial_derivative(p, "y"), P("2*y", kXY));
  EXPECT_EQ(partial_derivative(p, "x"), P("1", kXY));
  EXPECT_TRUE(partial_derivative(P("7/3", kXY), "x").is_zero());
  EXPECT_THROW(partial_derivative(p, "z"), UnknownVariableError);
}

TEST(PolynomialTest, Evaluate) {
  EXPECT_EQ(evaluate(P("x + 4*y^2", kXY), {{"x", Q(2)}, {"y", Q(1)}}), Q(6));
  EXPECT_EQ(evaluate(P("-x + 2*y^2", kXY), {{"x", Q(2)}, {"y", Q(1)}}), Q(0));
  EXPECT_EQ(evaluate(Polynomial(Ring(kXY)), {{"x", Q(3)}, {"y", Q(-1)}}), Q(0));
  EXPECT_THROW(evaluate(P("x + y", kXY), {{"x", Q(1)}}), UnknownVariableError);
}

TEST(PolynomialTest, Substitute) {
  const Ring axy({"a", "x", "y"});
  const Polynomial p = P("x^2 + a*y^2", axy);
  const Polynomial one = substitute(p, {{"a", Q(1)}});
  EXPECT_EQ(one.ring().names(), kXY);
  EXPECT_EQ(one, P("x^2 + y^2", kXY));
  EXPECT_EQ(substitute(p, {{"a", Q(0)}}), P("x^2", kXY));
  const Polynomial full = substitute(p, {{"a", Q(2)}, {"x", Q(1)}, {"y", Q(3)}});
  EXPECT_TRUE(full.is_constant());
  EXPECT_EQ(full.constant_value(), evaluate(p, {{"a", Q(2)}, {"x", Q(1)}, {"y", Q(3)}}));
  EXPECT_THROW(substitute(p, {{"b", Q(1)}}), UnknownVariableError);
}

TEST(PolynomialTest, ReduceExamples) {
  const MonomialOrder grevlex = MonomialOrder::grevlex(2);
  const auto r1 = reduce(P("-x + 8*y^2", kXY), {P("x", kXY), P("y^2", kXY)}, grevlex);
  EXPECT_TRUE(r1.remainder.is_zero());

  for (const auto& order : {MonomialOrder::lex(2), MonomialOrder::grevlex(2)}) {
    const auto r2 = reduce(P("x + 4*y^2", kXY), {P("-x + 2*y^2", kXY)}, order);
    EXPECT_FALSE(r2.remainder.is_zero());
  }

  const auto r3 = reduce(Polynomial(Ring(kXY)), {P("x", kXY), P("x*y - 1", kXY)}, grevlex);
  EXPECT_TRUE(r3.remainder.is_zero());
  for (const auto& q : r3.quotients) EXPECT_TRUE(q.is_zero());
}

TEST(PolynomialTest, RenderingFollowsOrder) {
  const Polynomial p = P("y^2 - x", kXY);
  EXPECT_EQ(p.to_string(), "-x + y^2");
  EXPECT_EQ(p.to_string(MonomialOrder::grevlex(2)), "y^2 - x");
  EXPECT_EQ(P("1/2*x^2*y - 3", kXY).to_string(), "1/2*x^2*y - 3");
}

TEST(PolynomialTest, Limits) {
  const PolynomialLimits limits;
  EXPECT_NO_THROW(check_limits(P("x^8", kXY), limits, "p"));
  EXPECT_THROW(check_limits(P("x^9", kXY), limits, "p"), LimitExceededError);
  const Polynomial wide = P("a", {"a", "b", "c", "d", "e", "f", "g"});
  EXPECT_THROW(check_limits(wide, limits, "p"), LimitExceededError);
}

class PolyringPropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{20240611};
  Ring ring_{std::vector<std::string>{"x", "y", "z"}};

  Polynomial random() { return test::random_polynomial(rng_, ring_, 6, 5); }
  Assignment random_point() {
    Assignment a;
    for (const auto& n : ring_.names()) a[n] = test::random_rational(rng_, 4, 3);
    return a;
  }
};

TEST_F(PolyringPropertyTest, RingLaws) {
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial p = random(), q = random(), s = random();
    EXPECT_EQ((p + q) + s, p + (q + s));
    EXPECT_EQ((p * q) * s, p * (q * s));
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ(p * (q + s), p * q + p * s);
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST_F(PolyringPropertyTest, Leibniz) {
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial p = random(), q = random();
    for (size_t v = 0; v < ring_.size(); ++v) {
      EXPECT_EQ(partial_derivative(p * q, v),
                p * partial_derivative(q, v) + q * partial_derivative(p, v));
    }
  }
}

TEST_F(PolyringPropertyTest, EvaluationIsHomomorphism) {
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial p = random(), q = random();
    const Assignment pt = random_point();
    EXPECT_EQ(evaluate(p + q, pt), evaluate(p, pt) + evaluate(q, pt));
    EXPECT_EQ(evaluate(p * q, pt), evaluate(p, pt) * evaluate(q, pt));
  }
}

TEST_F(PolyringPropertyTest, SubstituteThenEvaluate) {
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial p = random();
    const Assignment pt = random_point();
    Assignment partial{{"y", pt.at("y")}};
    Assignment rest{{"x", pt.at("x")}, {"z", pt.at("z")}};
    EXPECT_EQ(evaluate(substitute(p, partial), rest), evaluate(p, pt));
  }
}

TEST_F(PolyringPropertyTest, ReduceIdentity) {
  for (const auto& order : {MonomialOrder::lex(3), MonomialOrder::grevlex(3),
                            MonomialOrder::grevlex(std::vector<size_t>{2, 0, 1})}) {
    for (int trial = 0; trial < 30; ++trial) {
      const Polynomial p = random();
      std::vector<Polynomial> divisors;
      for (int k = 0; k < 3; ++k) {
        Polynomial d = test::random_polynomial(rng_, ring_, 3, 3);
        if (!d.is_zero()) divisors.push_back(d);
      }
      if (divisors.empty()) continue;
      const DivisionResult res = reduce(p, divisors, order);
      Polynomial sum = res.remainder;
      for (size_t i = 0; i < divisors.size(); ++i) sum += res.quotients[i] * divisors[i];
      EXPECT_EQ(sum, p);
      for (const auto& [m, c] : res.remainder.terms()) {
        for (const auto& d : divisors) EXPECT_FALSE(d.leading_monomial(order).divides(m));
      }
    }
  }
}

TEST_F(PolyringPropertyTest, MonomialOrdersAreTermOrders) {
  for (const auto& order : {MonomialOrder::lex(3), MonomialOrder::grevlex(3)}) {
    for (int trial = 0; trial < 200; ++trial) {
      Monomial a(3), b(3), c(3);
      std::uniform_int_distribution<uint32_t> e(0, 3);
      for (size_t i = 0; i < 3; ++i) {
        a[i] = e(rng_);
        b[i] = e(rng_);
        c[i] = e(rng_);
      }
      EXPECT_FALSE(order.less(a, Monomial(3)));
      if (order.less(a, b)) {
        EXPECT_TRUE(order.less(a * c, b * c));
      }
    }
  }
}

TEST_F(PolyringPropertyTest, GcdDividesBothAndCofactorsCoprime) {
  for (int trial = 0; trial < 40; ++trial) {
    const Polynomial g = test::random_polynomial(rng_, ring_, 2, 3);
    const Polynomial a = test::random_polynomial(rng_, ring_, 2, 3);
    const Polynomial b = test::random_polynomial(rng_, ring_, 2, 3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    const Polynomial d = gcd(g * a, g * b);
    ASSERT_TRUE(divide_exact(g * a, d).has_value());
    ASSERT_TRUE(divide_exact(g * b, d).has_value());
    EXPECT_TRUE(divide_exact(d, normalize_associate(g)).has_value());
  }
}

TEST(AlgebraTest, ResultantAndDiscriminant) {
  const Ring axy({"a", "x"});
  // res_x(x^2 + a, 2x) = 4a; discriminant of x^2 + a is -4a up to sign.
  const Polynomial f = P("x^2 + a", axy);
  const size_t x = 1;
  EXPECT_EQ(resultant(f, partial_derivative(f, x), x), P("4*a", axy));
  const Polynomial disc = discriminant(f, x);
  EXPECT_TRUE(disc == P("4*a", axy) || disc == P("-4*a", axy));
  EXPECT_EQ(resultant(P("x - 1", axy), P("x - a", axy), x).total_degree(), 1);
}

TEST_F(PolyringPropertyTest, PseudoDivisionIdentity) {
  for (int trial = 0; trial < 40; ++trial) {
    const Polynomial f = random();
    const Polynomial g = test::random_polynomial(rng_, ring_, 3, 3);
    if (g.is_zero()) continue;
    for (size_t v = 0; v < 3; ++v) {
      if (g.degree_in(v) < 0) continue;
      const PseudoDivision d = pseudo_divide(f, g, v);
      EXPECT_EQ(leading_coefficient_in(g, v).pow(d.exponent) * f,
                d.quotient * g + d.remainder);
      EXPECT_LT(d.remainder.degree_in(v), std::max(g.degree_in(v), 1));
    }
  }
}

}  // namespace
}  // namespace rlfgen
