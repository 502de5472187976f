#include <cmath>

#include <gtest/gtest.h>

#include "tnv/errors.hpp"
#include "tnv/reduction/reduction.hpp"
#include "tnv/sym/numeric.hpp"

using namespace tnv;
using reduction::make_case;
using sym::Expr;
using sym::Symbol;

namespace {

const reduction::Vars& V() { return reduction::vars(); }
Expr E(Symbol s) { return Expr(s); }

void expect_all_pass(const report::Report& rep) {
  for (const auto& c : rep.checks) EXPECT_NE(c.status, report::Status::fail) << c.id << ": " << c.residual;
}

}  // namespace

TEST(Cases, UnknownCase) {
  EXPECT_THROW(make_case(0), UnknownCase);
  EXPECT_THROW(make_case(2), UnknownCase);
  reduction::ReductionCase c{1, false};
  EXPECT_THROW(reduction::derive_D_ode(c), GaugeNotApplied);
}

TEST(DEquation, ClosedForm) {
  auto sol = reduction::closed_form(make_case(1));
  Expr r = E(V().r), c0 = E(V().c0);
  EXPECT_EQ(sol.D2, Expr(4) * r * r * c0 / (r * r - c0));
  EXPECT_TRUE(sym::is_zero(reduction::d_ode(sol.D)));
  EXPECT_FALSE(sym::is_zero(reduction::d_ode(V().t)));
  for (int eps : {1, -1}) {
    auto d = reduction::derive_D_ode(make_case(eps));
    EXPECT_TRUE(sym::is_zero(d.curvature * d.factor - d.ode)) << eps;
  }
}

// D' = -D^3/(4 r^3) from r = 2 with D(2) = 4/sqrt(3) (c0 = 1); closed form
// D(r) = 2r/sqrt(r^2 - 1), so D(5) = 10/sqrt(24).
TEST(DEquation, NumericOracle) {
  auto rhs = [](long double r, long double d) { return -d * d * d / (4 * r * r * r); };
  long double y = reduction::integrate(rhs, 2.0L, 4.0L / std::sqrt(3.0L), 5.0L);
  EXPECT_NEAR(static_cast<double>(y), 10.0 / std::sqrt(24.0), 1e-10);
}

TEST(FEquation, ClosedForms) {
  Expr r = E(V().r), c0 = E(V().c0), c1 = E(V().c1);
  auto s = V().s;
  auto sp = reduction::closed_form(make_case(1));
  auto tl = reduction::closed_form(make_case(-1));
  EXPECT_EQ(sp.F, (Expr(-4) * c0 * r * r + c1 * s + Expr(8) * c0 * c0) / (r * r));
  EXPECT_EQ(tl.F, (Expr(4) * c0 * r * r + c1 * s - Expr(8) * c0 * c0) / (r * r));
  EXPECT_TRUE(sym::is_zero(reduction::f_ode(1, sp.F)));
  EXPECT_TRUE(sym::is_zero(reduction::f_ode(-1, tl.F)));
  EXPECT_FALSE(sym::is_zero(reduction::f_ode(1, tl.F)));
  for (int eps : {1, -1}) {
    auto d = reduction::derive_F_ode(make_case(eps));
    EXPECT_TRUE(sym::is_zero(d.curvature * d.factor - d.ode)) << eps;
  }
}

// F(2) = -2 + 2 sqrt(3) at c0 = 1, c1 = 8; integrate the linear equation to
// r = 10 and compare with the hand-evaluated closed form.
TEST(FEquation, NumericOracle) {
  auto rhs = [](long double r, long double f) {
    return -(r * r - 2) / (r * (r * r - 1)) * f - 4 * r / (r * r - 1);
  };
  auto closed = [](long double r) {
    return (-4 * r * r + 8 * std::sqrt(r * r - 1) + 8) / (r * r);
  };
  long double y = reduction::integrate(rhs, 2.0L, closed(2.0L), 10.0L);
  EXPECT_NEAR(static_cast<double>(y), static_cast<double>(closed(10.0L)), 1e-10);
  auto samples = reduction::f_oracle(1, 1, 8, 2, 10, 20);
  for (const auto& smp : samples) EXPECT_NEAR(smp.numeric, smp.closed, 1e-9);
}

TEST(FEquation, OracleSweep) {
  for (int eps : {1, -1}) {
    auto c = reduction::oracle_sweep(eps, 0);
    EXPECT_EQ(c.status, report::Status::pass) << c.residual;
  }
}

TEST(ConstantR, Branches) {
  auto sp = reduction::constant_R_contradiction(make_case(1));
  expect_all_pass(sp);
  bool g11 = false;
  for (const auto& c : sp.checks) g11 = g11 || c.id == "constant-R-G11-spacelike";
  EXPECT_TRUE(g11);
  expect_all_pass(reduction::constant_R_contradiction(make_case(-1)));
}

TEST(Transform, Example) {
  auto sol = reduction::closed_form(make_case(1));
  Expr r = E(V().r);
  sym::Bindings b{{V().c0, Expr(1)}, {V().c1, Expr(8)}};
  // B^2(r') = -4 (r'^2 - 2r' - 1)/(r'^2 + 1)
  EXPECT_EQ(sym::substitute(sol.B2_prime, b), Expr(-4) * (r * r - Expr(2) * r - Expr(1)) / (r * r + Expr(1)));
  EXPECT_EQ(sym::substitute(sol.m, b), Expr(1));
  auto tl = reduction::closed_form(make_case(-1));
  sym::Bindings bt{{V().c0, Expr(1)}, {V().c1, Expr(-8)}};
  EXPECT_EQ(sym::substitute(tl.m, bt), Expr(1));
}

TEST(Transform, RoundTrip) {
  for (int eps : {1, -1}) {
    auto sol = reduction::closed_form(make_case(eps));
    auto model = reduction::transform_to_nut_form(sol);
    auto [c0, c1] = reduction::recover_constants(model.metric, eps);
    Expr m(Symbol::parameter("m")), l(Symbol::parameter("l"));
    EXPECT_EQ(c0, l * l);
    EXPECT_EQ(c1, Expr(8 * eps) * l * l * m);
    expect_all_pass(reduction::verify_transform(make_case(eps)));
  }
}

TEST(OnShell, Einstein) {
  for (int eps : {1, -1}) expect_all_pass(reduction::verify_on_shell(make_case(eps)));
}

// Exact oracle: c0 = l^2 = 4, c1 = 8 c0 m with m = 1, so at r^2 = c0
// 48 (l^2 - m^2)/l^6 = 48 * 3/64 = 9/4.
TEST(Kretschmann, HorizonValue) {
  for (int eps : {1, -1}) {
    auto sol = reduction::closed_form(make_case(eps));
    Expr k = reduction::kretschmann_closed_form(sol);
    Expr at = sym::substitute_even(k, V().r, E(V().c0));
    at = sym::substitute(at, {{V().c0, Expr(4)}, {V().c1, Expr(32 * eps)}});
    auto q = at.rational_value();
    ASSERT_TRUE(q) << at.str();
    EXPECT_EQ(*q, mpq_class(9, 4));
  }
}

TEST(Kretschmann, DisplayAndReport) {
  auto sol = reduction::closed_form(make_case(1));
  EXPECT_TRUE(sym::is_zero(reduction::kretschmann_closed_form(sol) - reduction::kretschmann_display()));
  expect_all_pass(reduction::kretschmann_report());
}

TEST(Reports, AllModuleReports) {
  expect_all_pass(reduction::verify_D_solution());
  for (int eps : {1, -1}) expect_all_pass(reduction::verify_F_solution(make_case(eps)));
}
