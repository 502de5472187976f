#include <gtest/gtest.h>

#include "tnv/catalog/catalog.hpp"
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

TEST(TaubNut, MetricComponents) {
  auto tn = catalog::taub_nut(m(), l());
  Expr f = catalog::taub_nut_f(m(), l(), r());
  Expr ct = sym::cos(Coords::theta()), st = sym::sin(Coords::theta());
  // chart (r, psi, theta, phi)
  EXPECT_EQ(tn.metric(0, 0), Expr(1) / f);
  EXPECT_EQ(tn.metric(1, 1), Expr(-4) * l() * l() * f);
  EXPECT_EQ(tn.metric(1, 3), Expr(-4) * l() * l() * f * ct);
  EXPECT_EQ(tn.metric(2, 2), r() * r() + l() * l());
  EXPECT_EQ(tn.metric(3, 3), Expr(-4) * l() * l() * f * ct * ct + (r() * r() + l() * l()) * st * st);
  EXPECT_TRUE(tn.metric(0, 1).is_zero());
  EXPECT_EQ(tn.tetrad->metric(), tn.metric);
}

TEST(TaubNut, Horizons) {
  auto [p01, m01] = catalog::horizons(Expr(0), Expr(1));
  EXPECT_EQ(p01, Expr(1));
  EXPECT_EQ(m01, Expr(-1));
  auto [p34, m34] = catalog::horizons(Expr(3), Expr(4));
  EXPECT_EQ(p34, Expr(8));
  EXPECT_EQ(m34, Expr(-2));
}

TEST(TaubNut, ParameterDomain) {
  EXPECT_THROW(catalog::taub_nut(m(), Expr(0)), ParameterDomain);
  EXPECT_THROW(catalog::taub_nut(m(), l(), 0), ParameterDomain);
  EXPECT_THROW(catalog::extension(catalog::Branch::psi_prime, m(), Expr(0)), ParameterDomain);
}

TEST(TaubNut, LensMetadata) {
  EXPECT_EQ(catalog::taub_nut(m(), l(), 1).psi_period, "4*pi");
  auto t3 = catalog::taub_nut(m(), l(), 3);
  EXPECT_EQ(t3.psi_period, "4*pi/3");
  EXPECT_EQ(t3.lens_index, 3);
  EXPECT_EQ(t3.metric, catalog::taub_nut(m(), l(), 1).metric);
}

TEST(TaubNut, OrbitTypes) {
  EXPECT_EQ(catalog::orbit_type(Expr(1), Expr(1), 0), "Taub");
  EXPECT_EQ(catalog::orbit_type(Expr(1), Expr(1), 3), "NUT");
  EXPECT_EQ(catalog::orbit_type(Expr(1), Expr(1), -1), "NUT");
  EXPECT_EQ(catalog::orbit_type(Expr(0), Expr(1), 1), "horizon");
}

TEST(Killing, TaubNutSymbolic) {
  auto rep = catalog::verify_killing(catalog::taub_nut(m(), l()));
  ASSERT_EQ(rep.checks.size(), 6u);
  for (const auto& c : rep.checks) EXPECT_EQ(c.status, report::Status::pass) << c.id << c.residual;
}

TEST(Killing, ExtensionsKeepIsometries) {
  for (auto b : {catalog::Branch::psi_prime, catalog::Branch::psi_double_prime}) {
    auto rep = catalog::verify_killing(catalog::extension(b, m(), l()));
    EXPECT_TRUE(rep.ok());
  }
}

TEST(Killing, RadialFieldIsNot) {
  auto tn = catalog::taub_nut(m(), l());
  EXPECT_FALSE(forms::lie_metric(forms::VecField::partial(tn.chart, Coords::r()), tn.metric).is_zero());
  EXPECT_TRUE(forms::lie_metric(forms::VecField::partial(tn.chart, Coords::phi()), tn.metric).is_zero());
}

TEST(Extension, Determinant) {
  for (auto b : {catalog::Branch::psi_prime, catalog::Branch::psi_double_prime}) {
    auto ext = catalog::extension(b, m(), l());
    Expr want = Expr(-4) * l() * l() * (r() * r() + l() * l()).pow(2) * sym::sin(Coords::theta()).pow(2);
    EXPECT_EQ(ext.metric.det(), want);
    // cross term 2(2l) sigma dr
    EXPECT_EQ(ext.metric(0, 1), Expr(b == catalog::Branch::psi_prime ? 2 : -2) * l());
  }
}

TEST(Extension, Einstein) {
  for (auto b : {catalog::Branch::psi_prime, catalog::Branch::psi_double_prime}) {
    auto c = curv::christoffel_curvature(catalog::extension(b, m(), l()).metric);
    for (const auto& row : c.einstein)
      for (const auto& e : row) EXPECT_TRUE(sym::is_zero(e));
  }
}

TEST(Extension, PullBack) {
  auto tn = catalog::taub_nut(m(), l());
  for (auto b : {catalog::Branch::psi_prime, catalog::Branch::psi_double_prime}) {
    auto ext = catalog::extension(b, m(), l());
    for (const auto& [what, e] : catalog::metric_difference(catalog::pull_back_extension(ext, b, m(), l()), tn.metric))
      EXPECT_TRUE(sym::is_zero(e)) << what;
  }
}

TEST(Family, CaseTetrads) {
  const Expr a(Symbol::function("A", Coords::r())), b(Symbol::function("B", Coords::r())),
      rr(Symbol::function("R", Coords::r()));
  auto s = catalog::generalized_family(1, a, b, rr);
  auto t = catalog::generalized_family(-1, a, b, rr);
  EXPECT_EQ(s.metric(0, 0), -a * a);
  EXPECT_EQ(s.metric(1, 1), b * b);
  EXPECT_EQ(t.metric(0, 0), a * a);
  EXPECT_EQ(t.metric(1, 1), -b * b);
  EXPECT_THROW(catalog::generalized_family(0, a, b, rr), UnknownCase);
}

TEST(Family, OrbitMetricExpansion) {
  auto orbit = forms::Chart::orbit();
  auto o = orbit->coords();
  Expr a(Symbol::parameter("a")), b(Symbol::parameter("b"));
  for (int eps : {1, -1}) {
    auto g = catalog::canonical_orbit_metric(eps, a, b);
    auto dpsi = forms::DiffForm::differential(orbit, o[0]);
    auto dth = forms::DiffForm::differential(orbit, o[1]);
    auto dph = forms::DiffForm::differential(orbit, o[2]);
    auto want = Expr(eps) * a * a * forms::square(dpsi + sym::cos(o[1]) * dph) +
                b * b * (forms::square(dth) + sym::sin(o[1]).pow(2) * forms::square(dph));
    EXPECT_EQ(g, want);
  }
}
