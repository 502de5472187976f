#include <gtest/gtest.h>

#include "tnv/catalog/catalog.hpp"
#include "tnv/curv/displays.hpp"
#include "tnv/curv/numeric_oracle.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/chart.hpp"
#include "tnv/reduction/reduction.hpp"

using namespace tnv;
using forms::Coords;
using forms::DiffForm;
using sym::Expr;
using sym::Symbol;

namespace {

Expr r() { return Expr(Coords::r()); }
Expr m() { return Expr(Symbol::parameter("m")); }
Expr l() { return Expr(Symbol::parameter("l")); }

curv::Tetrad flat_tetrad() {
  auto chart = forms::Chart::euler();
  std::vector<DiffForm> th;
  for (int i = 0; i < 4; ++i) th.push_back(DiffForm::unit(chart, i));
  return curv::Tetrad(th, {-1, 1, 1, 1});
}

bool all_zero(const curv::Array2<Expr>& g) {
  for (const auto& row : g)
    for (const auto& e : row)
      if (!sym::is_zero(e)) return false;
  return true;
}

}  // namespace

TEST(Connection, FlatTetrad) {
  auto b = curv::compute_bundle(flat_tetrad());
  for (const auto& row : b.connection)
    for (const auto& w : row) EXPECT_TRUE(w.is_zero());
  for (const auto& a : b.riemann)
    for (const auto& bb : a)
      for (const auto& c : bb)
        for (const auto& e : c) EXPECT_TRUE(e.is_zero());
}

TEST(Connection, MinkowskiChristoffel) {
  auto c = curv::christoffel_curvature(flat_tetrad().metric());
  for (const auto& plane : c.christoffel)
    for (const auto& row : plane)
      for (const auto& e : row) EXPECT_TRUE(e.is_zero());
}

TEST(Connection, SpacelikeExamples) {
  auto t = curv::formal_tetrad(1);
  auto b = curv::compute_bundle(t);
  const auto& v = reduction::vars();
  Expr A(v.A), B(v.B), R(v.R);
  Expr Bp = sym::diff(B, v.r);
  // omega^0_1 = (B'/(AB)) theta^1
  EXPECT_EQ(b.connection[0][1].component({1}), Bp / (A * B));
  EXPECT_EQ(b.connection[1][2].component({3}), -B / (Expr(2) * R * R));
  EXPECT_EQ(b.connection[2][3].component({1}), B / (Expr(2) * R * R));
  EXPECT_TRUE(curv::metricity_residuals(t, b.connection).empty());
  EXPECT_TRUE(curv::torsion_residuals(t, b.connection).empty());
}

TEST(Connection, TimelikeExamples) {
  auto t = curv::formal_tetrad(-1);
  auto b = curv::compute_bundle(t);
  const auto& v = reduction::vars();
  Expr A(v.A), B(v.B), R(v.R);
  EXPECT_EQ(b.connection[0][2].component({3}), -B / (Expr(2) * R * R));
  EXPECT_EQ(b.connection[1][2].component({2}), -sym::diff(R, v.r) / (A * R));
}

TEST(Riemann, SpacelikeListed) {
  auto b = curv::compute_bundle(curv::formal_tetrad(1));
  const auto& v = reduction::vars();
  Expr A(v.A), B(v.B), R(v.R);
  Expr Ap = sym::diff(A, v.r), Bp = sym::diff(B, v.r), Bpp = sym::diff(Bp, v.r), Rp = sym::diff(R, v.r);
  EXPECT_EQ(b.riemann[0][1][0][1], Bpp / (A * A * B) - Bp * Ap / (A.pow(3) * B));
  EXPECT_EQ(b.riemann[0][1][2][3], B * Rp / (A * R.pow(3)) - Bp / (A * R * R));
  EXPECT_EQ(b.riemann[2][3][2][3],
            Expr(1) / (R * R) + Rp * Rp / (A * A * R * R) - Expr::rational(3, 4) * B * B / R.pow(4));
}

TEST(Riemann, TimelikeListed) {
  auto b = curv::compute_bundle(curv::formal_tetrad(-1));
  const auto& v = reduction::vars();
  Expr A(v.A), B(v.B), R(v.R);
  Expr Bp = sym::diff(B, v.r), Rp = sym::diff(R, v.r);
  EXPECT_EQ(b.riemann[0][2][0][2], -Bp * Rp / (A * A * B * R) - B * B / (Expr(4) * R.pow(4)));
  EXPECT_EQ(b.riemann[2][3][2][3],
            Expr(1) / (R * R) - Rp * Rp / (A * A * R * R) + Expr::rational(3, 4) * B * B / R.pow(4));
}

TEST(Riemann, PairingAndIdentities) {
  for (int eps : {1, -1}) {
    auto b = curv::compute_bundle(curv::formal_tetrad(eps));
    const auto& R = b.riemann;
    EXPECT_TRUE(sym::is_zero(R[0][1][2][3] - Expr(2) * R[0][2][1][3])) << eps;
    EXPECT_TRUE(sym::is_zero(R[0][1][2][3] + Expr(2) * R[0][3][1][2])) << eps;
    for (const auto& [what, e] : curv::bianchi_residuals(R)) EXPECT_TRUE(sym::is_zero(e)) << what;
    for (const auto& [what, e] : curv::ricci_symmetry_residuals(b.ricci)) EXPECT_TRUE(sym::is_zero(e)) << what;
  }
}

TEST(Einstein, SpacelikeRelations) {
  auto b = curv::compute_bundle(curv::formal_tetrad(1));
  const auto& R = b.riemann;
  // R^1_212 = R_1212 (eta_1 = +1) etc.
  EXPECT_TRUE(sym::is_zero(b.einstein[0][0] - (Expr(2) * R[1][2][1][2] + R[2][3][2][3])));
  EXPECT_TRUE(sym::is_zero(b.einstein[1][1] - (Expr(-2) * R[0][2][0][2] - R[2][3][2][3])));
  EXPECT_TRUE(sym::is_zero(b.einstein[2][2] - b.einstein[3][3]));
  EXPECT_TRUE(sym::is_zero(b.einstein[2][2] + R[0][2][0][2] + R[1][2][1][2] + R[0][1][0][1]));
}

TEST(Displays, BothCases) {
  for (int eps : {1, -1}) {
    for (const auto& c : curv::display_checks(eps)) {
      EXPECT_NE(c.status, report::Status::fail) << c.id << ": " << c.residual;
    }
  }
}

TEST(Displays, TimelikeOmega13Reported) {
  bool found = false;
  for (const auto& c : curv::display_checks(-1)) {
    if (c.id == "timelike-curvature-forms") {
      found = true;
      EXPECT_EQ(c.status, report::Status::mismatch_reported);
      EXPECT_NE(c.residual.find("Omega13"), std::string::npos);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Pipelines, EquivalentOnFormalTetrads) {
  for (int eps : {1, -1}) {
    auto t = curv::formal_tetrad(eps);
    auto b = curv::compute_bundle(t);
    auto c = curv::christoffel_curvature(t.metric());
    auto fr = curv::to_frame(c, t);
    auto ge = curv::einstein_to_frame(c, t);
    for (int a = 0; a < 4; ++a)
      for (int bb = 0; bb < 4; ++bb) {
        EXPECT_TRUE(sym::is_zero(ge[a][bb] - b.einstein[a][bb]));
        for (int x = 0; x < 4; ++x)
          for (int y = 0; y < 4; ++y) EXPECT_TRUE(sym::is_zero(fr[a][bb][x][y] - b.riemann[a][bb][x][y]));
      }
  }
}

TEST(Vacuum, TaubNutBothPipelines) {
  auto tn = catalog::taub_nut(m(), l());
  EXPECT_TRUE(all_zero(curv::compute_bundle(*tn.tetrad).einstein));
  auto c = curv::christoffel_curvature(tn.metric);
  for (const auto& row : c.einstein)
    for (const auto& e : row) EXPECT_TRUE(sym::is_zero(e));
}

// Independent oracle: interval evaluation of the coordinate Einstein tensor
// straight from metric derivatives, at seeded rational points.
TEST(Vacuum, NumericOracleTaubNut) {
  auto tn = catalog::taub_nut(Expr(mpq_class(3, 2)), Expr(mpq_class(2, 3)));
  mpfr_prec_t bits = 128;
  for (auto [rv, th] : std::vector<std::pair<mpq_class, mpq_class>>{{5, 1}, {mpq_class(1, 3), mpq_class(1, 2)}, {-7, 2}}) {
    sym::NumericPoint pt{{Coords::r(), sym::Interval(rv, bits)},
                         {Coords::psi(), sym::Interval(mpq_class(1, 5), bits)},
                         {Coords::theta(), sym::Interval(th, bits)},
                         {Coords::phi(), sym::Interval(mpq_class(2), bits)}};
    EXPECT_LT(curv::max_magnitude(curv::numeric_einstein(tn.metric, pt, bits)), 1e-25);
  }
}

TEST(Vacuum, NumericOracleDetectsNonVacuum) {
  auto tn = catalog::taub_nut(Expr(1), Expr(1));
  auto g = tn.metric;
  g.set(2, 2, g(2, 2) * (Expr(1) + r() / Expr(10)));
  mpfr_prec_t bits = 128;
  sym::NumericPoint pt{{Coords::r(), sym::Interval(mpq_class(3), bits)},
                       {Coords::psi(), sym::Interval(mpq_class(1), bits)},
                       {Coords::theta(), sym::Interval(mpq_class(1), bits)},
                       {Coords::phi(), sym::Interval(mpq_class(1), bits)}};
  EXPECT_GT(curv::max_magnitude(curv::numeric_einstein(g, pt, bits)), 1e-3);
}

// Ricci scalar from the Cartan pipeline against -g^{mn} G_mn from the
// interval oracle, for a concrete member of the generalized family.
TEST(Scalar, CartanAgainstNumericTrace) {
  Expr rr = r();
  auto model = catalog::generalized_family(1, Expr(1) + rr * rr, rr, rr * rr + Expr(2));
  auto b = curv::compute_bundle(*model.tetrad);
  mpfr_prec_t bits = 128;
  sym::RationalPoint rp{{Coords::r(), mpq_class(3, 2)}, {Coords::psi(), 1}, {Coords::theta(), 1}, {Coords::phi(), 1}};
  sym::NumericPoint np;
  for (const auto& [k, v] : rp) np.emplace(k, sym::Interval(v, bits));
  auto G = curv::numeric_einstein(model.metric, np, bits);
  auto gi = model.metric.inverse();
  sym::Interval trace(mpq_class(0), bits);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) trace = trace + sym::eval_numeric(gi[i][j], rp, bits) * G[i][j];
  sym::Interval s = sym::eval_numeric(b.scalar, rp, bits);
  EXPECT_TRUE(s.overlaps(-trace)) << s.str() << " vs " << (-trace).str();
}

TEST(Kretschmann, TaubNutHorizonValue) {
  // K(r = 0) = 48 (l^2 - m^2)/l^6 at m = 1/2, l = 3: 48 * (35/4)/729 = 140/243
  auto tn = catalog::taub_nut(Expr(mpq_class(1, 2)), Expr(3));
  Expr k = curv::compute_bundle(*tn.tetrad).kretschmann;
  auto q = sym::substitute(k, {{Coords::r(), Expr(0)}}).rational_value();
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, mpq_class(140, 243));
}

TEST(Coordinate, SingularMetric) {
  auto chart = forms::Chart::euler();
  forms::SymTensor2 g(chart);
  g.set(0, 0, Expr(1));
  EXPECT_THROW(curv::christoffel_curvature(g), SingularMetric);
}
