#include <gtest/gtest.h>

#include "tnv/catalog/catalog.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/chart.hpp"
#include "tnv/parse/parser.hpp"
#include "tnv/reduction/reduction.hpp"
#include "tnv/sym/numeric.hpp"

using namespace tnv;
using forms::Coords;
using sym::Expr;
using sym::Symbol;

namespace {

Expr r() { return Expr(Coords::r()); }
Expr m() { return Expr(Symbol::parameter("m")); }
Expr l() { return Expr(Symbol::parameter("l")); }

}  // namespace

TEST(Canonical, Pythagorean) {
  Expr s = sym::sin(Coords::theta()), c = sym::cos(Coords::theta());
  EXPECT_EQ(s * s + c * c, Expr(1));
  EXPECT_TRUE(sym::is_zero(s * s + c * c - Expr(1)));
}

TEST(Canonical, RadicalRelation) {
  const auto& v = reduction::vars();
  EXPECT_EQ(v.s * v.s, r() * r() - Expr(v.c0));
  EXPECT_EQ(v.t * v.t, Expr(v.c0));
}

TEST(Canonical, EqualityIsStructural) {
  Expr a = (r() + m()) * (r() - m());
  Expr b = r() * r() - m() * m();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(r() - m(), Expr(0));
  EXPECT_FALSE(sym::is_zero(r() - m()));
}

TEST(Canonical, FractionsReduce) {
  Expr e = (r() * r() - Expr(1)) / (r() - Expr(1));
  EXPECT_EQ(e, r() + Expr(1));
  EXPECT_EQ(e.den(), sym::Poly(1));
}

TEST(Canonical, DenominatorRationalised) {
  const auto& v = reduction::vars();
  Expr e = Expr(1) / v.s;
  // 1/s = s/(r^2 - c0)
  EXPECT_EQ(e * (r() * r() - Expr(v.c0)), v.s);
  auto ids = v.s.variables();
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_FALSE(e.den().contains(ids[0]));
}

TEST(Canonical, DivisionByZero) {
  EXPECT_THROW((void)(Expr(1) / (r() - r())), DivisionByZero);
  EXPECT_THROW((void)Expr(0).inverse(), DivisionByZero);
}

TEST(Diff, Basics) {
  EXPECT_EQ(sym::diff(sym::cos(Coords::theta()), Coords::theta()), -sym::sin(Coords::theta()));
  EXPECT_EQ(sym::diff(sym::sin(Coords::theta()), Coords::theta()), sym::cos(Coords::theta()));
  EXPECT_EQ(sym::diff(r().pow(3), Coords::r()), Expr(3) * r() * r());
  EXPECT_EQ(sym::diff(m() * r(), Coords::r()), m());
}

TEST(Diff, Leibniz) {
  const auto& v = reduction::vars();
  Expr a(v.A), b(v.B);
  EXPECT_EQ(sym::diff(a * b, v.r), sym::diff(a, v.r) * b + a * sym::diff(b, v.r));
}

TEST(Diff, ImplicitRadical) {
  const auto& v = reduction::vars();
  // oracle: s^2 = r^2 - c0 gives 2 s s' = 2 r
  EXPECT_EQ(v.s * sym::diff(v.s, v.r), r());
  EXPECT_EQ(sym::diff(v.s, v.r), r() / v.s);
}

TEST(Diff, QuotientAgainstFiniteDifference) {
  Expr f = catalog::taub_nut_f(Expr(1), Expr(1), r());
  Expr fp = sym::diff(f, Coords::r());
  // f = (r^2 - 2r - 1)/(r^2 + 1), f' = (2r^2 + 4r - 2)/(r^2 + 1)^2 by hand
  Expr hand = (Expr(2) * r() * r() + Expr(4) * r() - Expr(2)) / (r() * r() + Expr(1)).pow(2);
  EXPECT_EQ(fp, hand);
}

TEST(Diff, OrderCap) {
  Expr a(Symbol::function("A", Coords::r()));
  Expr a2 = sym::diff(sym::diff(a, Coords::r()), Coords::r());
  EXPECT_THROW(sym::diff(a2, Coords::r()), DerivativeOrderError);
}

TEST(IsZero, Examples) {
  Expr f = catalog::taub_nut_f(m(), l(), r());
  EXPECT_TRUE(sym::is_zero(f * (r() * r() + l() * l()) - (r() * r() - Expr(2) * m() * r() - l() * l())));
  EXPECT_FALSE(sym::is_zero(r() - m()));
}

TEST(Substitute, Horizons) {
  auto [rp, rm] = catalog::horizons(m(), l());
  sym::Bindings m0{{Symbol::parameter("m"), Expr(0)}};
  EXPECT_EQ(sym::substitute(rp, m0), l());
  EXPECT_EQ(sym::substitute(rm, m0), -l());
  Expr f = catalog::taub_nut_f(m(), l(), r());
  EXPECT_TRUE(sym::is_zero(sym::substitute(f, {{Coords::r(), rp}})));
  EXPECT_TRUE(sym::is_zero(sym::substitute(f, {{Coords::r(), rm}})));
}

TEST(Substitute, FormalFunctions) {
  const auto& v = reduction::vars();
  Expr e = sym::diff(Expr(v.B), v.r) / (Expr(v.A) * Expr(v.B));
  EXPECT_TRUE(sym::substitute(e, {{v.A, Expr(1)}, {v.B, Expr(1)}, {v.R, Expr(1)}}).is_zero());
  // derivatives follow the binding
  Expr bp = sym::diff(Expr(v.B), v.r);
  EXPECT_EQ(sym::substitute(bp, {{v.B, r().pow(3)}}), Expr(3) * r() * r());
}

TEST(Substitute, DOde) {
  const auto& v = reduction::vars();
  Expr d = sym::sqrt_expr(Expr(4) * r() * r() * Expr(v.c0) / (r() * r() - Expr(v.c0)));
  EXPECT_TRUE(sym::is_zero(reduction::d_ode(d)));
  EXPECT_FALSE(sym::is_zero(reduction::d_ode(v.t)));
}

TEST(Sqrt, PositiveBranchExtraction) {
  EXPECT_EQ(sym::sqrt_expr(Expr(4) * r() * r()), Expr(2) * r());
  EXPECT_EQ(sym::sqrt_expr(Expr(9)), Expr(3));
  EXPECT_THROW(sym::sqrt_expr(Expr(-1)), DomainError);
}

TEST(Numeric, ExactRationalAndEnclosure) {
  Expr f = catalog::taub_nut_f(Expr(1), Expr(1), r());
  auto q = sym::substitute(f, {{Coords::r(), Expr(4)}}).rational_value();
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, mpq_class(7, 17));
  auto enc = sym::eval_numeric(f, sym::RationalPoint{{Coords::r(), 4}}, 128);
  EXPECT_TRUE(enc.contains(mpq_class(7, 17)));
  EXPECT_LT(enc.width(), 1e-30);
}

TEST(Numeric, SinZeroAndPrecision) {
  auto s = sym::eval_numeric(sym::sin(Coords::theta()), sym::RationalPoint{{Coords::theta(), 0}}, 128);
  EXPECT_TRUE(s.contains(0));
  auto c = sym::eval_numeric(sym::cos(Coords::theta()), sym::RationalPoint{{Coords::theta(), 1}}, 256);
  EXPECT_NEAR(c.lo_double(), 0.54030230586813971740, 1e-15);
  EXPECT_LT(c.width(), 1e-60);
}

TEST(Numeric, DomainErrors) {
  const auto& v = reduction::vars();
  // s = sqrt(r^2 - c0) at r = 1, c0 = 4 has a negative radicand
  EXPECT_THROW(sym::eval_numeric(v.s, sym::RationalPoint{{v.r, 1}, {v.c0, 4}}, 128), DomainError);
  EXPECT_THROW(sym::eval_numeric(r(), sym::RationalPoint{}, 128), Error);
}

TEST(Numeric, PrecisionFromEnvironment) {
  setenv("VERIFY_PRECISION_BITS", "200", 1);
  EXPECT_EQ(sym::default_precision(), 200);
  unsetenv("VERIFY_PRECISION_BITS");
  EXPECT_EQ(sym::default_precision(), 128);
}

TEST(Parser, RoundTripAndPrecedence) {
  Expr f = parse::parse_expr("(r^2 - 2*m*r - l^2)/(r^2 + l^2)");
  EXPECT_EQ(f, catalog::taub_nut_f(m(), l(), r()));
  EXPECT_EQ(parse::parse_expr("-2^2"), Expr(-4));
  EXPECT_EQ(parse::parse_expr("1/2 r"), r() / Expr(2));
  auto tree = parse::parse_tree("a + b*c");
  EXPECT_EQ(parse::parse_tree(tree->str())->str(), tree->str());
  EXPECT_THROW(parse::parse_expr("(r + "), ParseError);
}

TEST(Parser, PrimesOnFormalFunctions) {
  const auto& v = reduction::vars();
  EXPECT_EQ(parse::parse_expr("B'"), sym::diff(Expr(v.B), v.r));
  EXPECT_EQ(parse::parse_expr("A''"), sym::diff(sym::diff(Expr(v.A), v.r), v.r));
}
