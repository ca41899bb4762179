#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rlfgen/real_algebraic.h"
#include "test_support.h"

namespace rlfgen {
namespace {

using test::P;
using test::Q;

TEST(IntervalTest, ArithmeticEnclosesProducts) {
  const Interval a{Q(-1), Q(2)};
  const Interval b{Q(3), Q(4)};
  const Interval s = a + b;
  EXPECT_EQ(s.lo, Q(2));
  EXPECT_EQ(s.hi, Q(6));
  const Interval m = a * b;
  EXPECT_EQ(m.lo, Q(-4));
  EXPECT_EQ(m.hi, Q(8));
  const Interval sq = pow(a, 2);
  EXPECT_EQ(sq.lo, Q(0));
  EXPECT_EQ(sq.hi, Q(4));
  const Interval cube = pow(Interval{Q(-2), Q(-1)}, 3);
  EXPECT_EQ(cube.lo, Q(-8));
  EXPECT_EQ(cube.hi, Q(-1));
}

TEST(DeadlineTest, ExpiresAndThrows) {
  const Deadline never;
  EXPECT_FALSE(never.expired());
  EXPECT_NO_THROW(never.check());
  const Deadline now = Deadline::after(std::chrono::milliseconds(0));
  EXPECT_TRUE(now.expired());
  EXPECT_THROW(now.check(), TimeoutError);
}

TEST(RealRootsTest, SquareRootOfTwo) {
  const auto roots = real_roots(P("x^2 - 2", {"x"}));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_FALSE(roots[0].is_rational());
  EXPECT_LT(roots[0].compare(Q(0)), 0);
  EXPECT_GT(roots[1].compare(Q(7, 5)), 0);
  EXPECT_LT(roots[1].compare(Q(3, 2)), 0);
  roots[1].refine(Q(1, 1000000));
  EXPECT_NEAR(roots[1].approximate(), std::sqrt(2.0), 1e-6);
  EXPECT_EQ(roots[1].sign_of(P("x^2 - 2", {"x"})), 0);
  EXPECT_EQ(roots[1].sign_of(P("x - 1", {"x"})), 1);
}

TEST(RealRootsTest, DetectsRationalRoots) {
  const auto roots = real_roots(P("(2*x - 1)*(x^2 - 2)*(3*x + 7)", {"x"}));
  ASSERT_EQ(roots.size(), 4u);
  ASSERT_TRUE(roots[0].is_rational());
  EXPECT_EQ(roots[0].coordinate().value(), Q(-7, 3));
  EXPECT_FALSE(roots[1].is_rational());
  ASSERT_TRUE(roots[2].is_rational());
  EXPECT_EQ(roots[2].coordinate().value(), Q(1, 2));
  EXPECT_FALSE(roots[3].is_rational());
}

TEST(RealRootsTest, RepeatedRootsCountOnce) {
  const auto roots = real_roots(P("(x - 1)^3*(x + 2)^2*(x^2 + 1)", {"x"}));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].coordinate().value(), Q(-2));
  EXPECT_EQ(roots[1].coordinate().value(), Q(1));
  EXPECT_TRUE(real_roots(P("x^4 + 1", {"x"})).empty());
  EXPECT_TRUE(real_roots(P("3", {"x"})).empty());
  EXPECT_THROW(real_roots(P("0", {"x"})), Error);
}

TEST(RealRootsTest, AlgebraicNumberValidatesInterval) {
  const Polynomial p = P("x^2 - 2", {"x"});
  EXPECT_NO_THROW(AlgebraicNumber(p, Q(1), Q(2)));
  EXPECT_THROW(AlgebraicNumber(p, Q(-2), Q(2)), Error);
  EXPECT_THROW(AlgebraicNumber(p, Q(2), Q(1)), Error);
  const AlgebraicNumber half(Q(1, 2));
  EXPECT_TRUE(half.is_rational());
  EXPECT_EQ(half.compare(Q(1, 2)), 0);
}

// Oracle: the polynomial is built from known roots, so the number of roots in
// any interval is a direct count.
TEST(SturmProperty, CountMatchesConstruction) {
  std::mt19937_64 rng(7);
  const Ring ring({"x"});
  const Polynomial x = Polynomial::variable(ring, "x");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> roots;
    Polynomial p = Polynomial::constant(ring, test::random_rational(rng, 4, 1) + 5);
    int degree = 0;
    const int linear = static_cast<int>(rng() % 7);
    for (int i = 0; i < linear; ++i) {
      const Rational r = test::random_rational(rng, 6, 4);
      const int mult = 1 + static_cast<int>(rng() % 2);
      if (degree + mult > 10) break;
      roots.push_back(r);
      p *= (x - Polynomial::constant(ring, r)).pow(mult);
      degree += mult;
    }
    if (degree + 2 <= 10 && rng() % 2) {
      const Rational shift = test::random_rational(rng, 3, 2);
      const Rational c = abs(test::random_rational(rng, 4, 3)) + Q(1, 5);
      const Polynomial t = x - Polynomial::constant(ring, shift);
      p *= t * t + Polynomial::constant(ring, c);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    Rational lo = test::random_rational(rng, 8, 3);
    Rational hi = test::random_rational(rng, 8, 3);
    if (hi < lo) std::swap(lo, hi);
    if (lo == hi) hi += 1;
    const int expected = static_cast<int>(std::count_if(
        roots.begin(), roots.end(), [&](const Rational& r) { return lo < r && r <= hi; }));
    EXPECT_EQ(count_real_roots(p, lo, hi), expected) << p.to_string();
    if (p.degree_in(size_t{0}) > 0 && sign(evaluate(p, test::point({lo}))) != 0 &&
        sign(evaluate(p, test::point({hi}))) != 0) {
      const SamplePoint base(ring);
      const auto seq = base.sturm_sequence(p);
      EXPECT_EQ(base.sign_variations(seq, lo) - base.sign_variations(seq, hi), expected)
          << p.to_string();
    }
    EXPECT_EQ(real_roots(p).size(), roots.size());
  }
}

class TowerTest : public ::testing::Test {
 protected:
  Ring ring{std::vector<std::string>{"x", "y", "z"}};
  Polynomial p(const std::string& text) const { return P(text, ring); }

  // x = sqrt(2), y = 2^(1/4).
  SamplePoint tower() const {
    const SamplePoint base(ring);
    const auto xs = base.isolate_roots({p("x^2 - 2")}).roots;
    EXPECT_EQ(xs.size(), 2u);
    const SamplePoint px = base.extended(xs.at(1));
    const auto ys = px.isolate_roots({p("y^2 - x")}).roots;
    EXPECT_EQ(ys.size(), 2u);
    return px.extended(ys.at(1));
  }
};

TEST_F(TowerTest, SignsOverNestedRadicals) {
  const SamplePoint pt = tower();
  EXPECT_EQ(pt.sign(p("y^4 - 2")), 0);
  EXPECT_EQ(pt.sign(p("y^2 - x")), 0);
  EXPECT_EQ(pt.sign(p("y^3 - x*y")), 0);
  EXPECT_EQ(pt.sign(p("y - 1")), 1);
  EXPECT_EQ(pt.sign(p("y - x")), -1);
  EXPECT_EQ(pt.sign(p("x*y^2 - 2")), 0);
  EXPECT_EQ(pt.sign(p("x*y^2 - 2 - 1/1000000000")), -1);
  EXPECT_TRUE(pt.is_zero(p("(y^2 - x)*(x + y + 7)")));
  EXPECT_FALSE(pt.is_zero(p("y^2 + x")));
  EXPECT_THROW(pt.sign(p("z")), std::logic_error);
}

TEST_F(TowerTest, LiftingMergesSharedRoots) {
  const SamplePoint base(ring);
  const auto xs = base.isolate_roots({p("x^2 - 2")}).roots;
  const SamplePoint px = base.extended(xs.at(1));
  const auto lift = px.isolate_roots({p("y^2 - 2"), p("y - x"), p("(y - x)^2"), p("y^2 + 1")});
  ASSERT_EQ(lift.roots.size(), 2u);
  EXPECT_TRUE(lift.nullified.empty());
  const SamplePoint below = px.extended(lift.roots[0]);
  below.refine_to(1, Q(1, 1000));
  EXPECT_NEAR(below.coordinate(1).approximate(), -std::sqrt(2.0), 1e-3);
  const SamplePoint on = px.extended(lift.roots[1]);
  on.refine_to(1, Q(1, 1000));
  EXPECT_NEAR(on.coordinate(1).approximate(), std::sqrt(2.0), 1e-3);
  EXPECT_EQ(on.sign(p("y - x")), 0);
}

TEST_F(TowerTest, NullifiedPolynomialsAreReported) {
  const SamplePoint base(ring);
  const SamplePoint px = base.extended(base.isolate_roots({p("x^2 - 2")}).roots.at(0));
  const auto lift = px.isolate_roots({p("(x^2 - 2)*y"), p("y - 1")});
  ASSERT_EQ(lift.nullified, std::vector<size_t>{0});
  ASSERT_EQ(lift.roots.size(), 1u);
  EXPECT_EQ(lift.roots[0].value(), Q(1));
}

TEST_F(TowerTest, RationalCoordinatesAreSubstituted) {
  const SamplePoint pt = SamplePoint(ring)
                             .extended(Coordinate::rational(Q(1, 2)))
                             .extended(Coordinate::rational(Q(-3)));
  EXPECT_TRUE(pt.all_rational());
  EXPECT_EQ(pt.rational_values(), (std::vector<Rational>{Q(1, 2), Q(-3)}));
  EXPECT_EQ(pt.sign(p("2*x*y + 3")), 0);
  const auto lift = pt.isolate_roots({p("z^2 - x"), p("z - y")});
  ASSERT_EQ(lift.roots.size(), 3u);
  EXPECT_EQ(lift.roots[0].value(), Q(-3));
}

TEST_F(TowerTest, CylinderSamplesInterleave) {
  const SamplePoint base(ring);
  const auto lift = base.isolate_roots({p("x^2 - 2"), p("x - 3/2"), p("2*x + 3"), p("x^2 - 9/4")});
  ASSERT_EQ(lift.roots.size(), 4u);
  const auto cells = base.cylinder_samples(lift.roots);
  ASSERT_EQ(cells.size(), 9u);
  double previous = -1e9;
  for (size_t i = 0; i < cells.size(); ++i) {
    EXPECT_EQ(cells[i].section, i % 2 == 1);
    if (!cells[i].section) {
      EXPECT_TRUE(cells[i].coordinate.is_rational());
    }
    const double v = cells[i].coordinate.approximate();
    EXPECT_GT(v, previous);
    previous = v;
  }
  const auto empty = base.cylinder_samples({});
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty[0].coordinate.value(), Q(0));
}

TEST_F(TowerTest, SignAgreesWithFloatingPointAwayFromZero) {
  std::mt19937_64 rng(11);
  const SamplePoint pt = tower();
  const double xv = std::sqrt(2.0);
  const double yv = std::pow(2.0, 0.25);
  const Ring xy({"x", "y"});
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial q = test::random_polynomial(rng, xy, 4, 5).embed(ring);
    double approx = 0;
    for (const auto& [m, c] : q.terms()) {
      approx += c.get_d() * std::pow(xv, m[0]) * std::pow(yv, m[1]);
    }
    const int s = pt.sign(q);
    if (std::abs(approx) > 1e-9) {
      EXPECT_EQ(s, approx > 0 ? 1 : -1) << q.to_string();
    }
  }
}

}  // namespace
}  // namespace rlfgen
