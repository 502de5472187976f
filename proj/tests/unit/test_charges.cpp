#include <cmath>

#include <gtest/gtest.h>

#include "tnv/charges/charges.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/chart.hpp"

using namespace tnv;
using forms::Coords;
using sym::Expr;
using sym::Symbol;

namespace {

Expr r() { return Expr(Coords::r()); }
Expr m() { return Expr(Symbol::parameter("m")); }
Expr l() { return Expr(Symbol::parameter("l")); }

}  // namespace

TEST(Charges, SymbolicLimits) {
  auto tn = catalog::taub_nut(m(), l());
  auto k = charges::komar_field(tn);
  auto km = charges::komar_mass(tn, k);
  auto dc = charges::dual_charge(tn, k);
  EXPECT_EQ(km.limit, -m());
  EXPECT_EQ(dc.limit, l());
  Expr f = catalog::taub_nut_f(m(), l(), r());
  EXPECT_TRUE(sym::is_zero(km.value + sym::diff(f, Coords::r()) * (r() * r() + l() * l()) / Expr(2)));
  EXPECT_TRUE(sym::is_zero(dc.value - l() * f));
}

TEST(Charges, KFlat) {
  auto tn = catalog::taub_nut(m(), l());
  auto kf = charges::flat(charges::komar_field(tn), tn.metric);
  auto sz = catalog::invariant_frame(tn.chart).sigma_z;
  Expr f = catalog::taub_nut_f(m(), l(), r());
  auto diff = kf - Expr(2) * l() * f * sz;
  EXPECT_TRUE(diff.is_zero()) << diff.str();
}

// Oracle: -f'(r)(r^2 + l^2)/2 by a central difference in long double.
TEST(Charges, FiniteRadiusAgainstFiniteDifference) {
  auto tn = catalog::taub_nut(Expr(1), Expr(1));
  auto km = charges::komar_mass(tn, charges::komar_field(tn));
  auto f = [](long double x) { return (x * x - 2 * x - 1) / (x * x + 1); };
  for (int rv : {3, 10, 100}) {
    long double h = 1e-5L, x = rv;
    long double fp = (f(x + h) - f(x - h)) / (2 * h);
    long double want = -fp * (x * x + 1) / 2;
    auto got = sym::eval_numeric(km.value, sym::RationalPoint{{Coords::r(), rv}}, 128);
    EXPECT_NEAR(got.lo_double(), static_cast<double>(want), 1e-8) << rv;
  }
}

TEST(Charges, ConvergenceTables) {
  auto tn = catalog::taub_nut(Expr(1), Expr(1));
  auto k = charges::komar_field(tn);
  auto km = charges::komar_mass(tn, k);
  auto dc = charges::dual_charge(tn, k);
  auto radii = charges::default_radii();
  ASSERT_EQ(radii.size(), 4u);
  EXPECT_EQ(radii[2], mpq_class(100000));
  for (const auto* c : {&km, &dc}) {
    auto rows = charges::convergence_table(c->value, c->limit, {}, radii);
    EXPECT_LT(rows[2].error, 1e-4);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].error, rows[i - 1].error);
    EXPECT_NEAR(charges::convergence_order(rows), -1.0, 0.05);
  }
}

TEST(Charges, Variants) {
  auto t0 = catalog::taub_nut(Expr(0), l());
  EXPECT_TRUE(charges::komar_mass(t0, charges::komar_field(t0)).limit.is_zero());
  auto tneg = catalog::taub_nut(m(), -l());
  EXPECT_EQ(charges::dual_charge(tneg, charges::komar_field(tneg)).limit, -l());
  auto t12 = catalog::taub_nut(Expr(1), Expr(2));
  EXPECT_EQ(charges::dual_charge(t12, charges::komar_field(t12)).limit, Expr(2));
}

TEST(Charges, Errors) {
  auto tn = catalog::taub_nut(m(), l());
  EXPECT_THROW(charges::komar_mass(tn, forms::VecField::partial(tn.chart, Coords::r())), NotKilling);
  auto ext = catalog::extension(catalog::Branch::psi_prime, m(), l());
  EXPECT_THROW(charges::komar_mass(ext, charges::komar_field(ext)), BadParams);
  auto flipped = tn;
  flipped.metric = Expr(-1) * tn.metric;
  EXPECT_THROW(charges::komar_mass(flipped, charges::komar_field(flipped)), NotTimelikeRegion);
}

TEST(Limits, Examples) {
  Expr f = catalog::taub_nut_f(m(), l(), r());
  EXPECT_EQ(charges::limit_at_infinity(f, Coords::r()), Expr(1));
  EXPECT_EQ(charges::limit_at_infinity(-sym::diff(f, Coords::r()) * (r() * r() + l() * l()) / Expr(2), Coords::r()), -m());
  EXPECT_THROW(charges::limit_at_infinity(r() * f, Coords::r()), Divergent);
  Expr s = sym::sqrt_expr(r() * r() + Expr(1));
  EXPECT_EQ(charges::limit_at_infinity(s - r(), Coords::r()), Expr(0));
  EXPECT_EQ(charges::limit_at_infinity(s / r(), Coords::r()), Expr(1));
  // sqrt(r^2 + 1) = r + 1/(2r) - 1/(8r^3) + ...
  EXPECT_EQ(charges::limit_at_infinity((s - r()) * r(), Coords::r()), Expr::rational(1, 2));
  EXPECT_EQ(charges::limit_at_infinity((s - r() - Expr(1) / (Expr(2) * r())) * r().pow(3), Coords::r()),
            Expr::rational(-1, 8));
  EXPECT_THROW(charges::limit_at_infinity((s - r()) * r().pow(2), Coords::r()), Divergent);
  // sqrt(r^2 + 2r) = r + 1 - 1/(2r) + ...
  Expr t = sym::sqrt_expr(r() * r() + Expr(2) * r());
  EXPECT_EQ(charges::limit_at_infinity(t - r(), Coords::r()), Expr(1));
  EXPECT_EQ(charges::limit_at_infinity((t - r() - Expr(1)) * r(), Coords::r()), Expr::rational(-1, 2));
}

TEST(Charges, Report) {
  auto rep = charges::charges_report();
  for (const auto& c : rep.checks) EXPECT_EQ(c.status, report::Status::pass) << c.id << ": " << c.residual;
  EXPECT_EQ(rep.checks.size(), 21u);
}
