#include <gtest/gtest.h>

#include "tnv/catalog/catalog.hpp"
#include "tnv/curv/displays.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/chart.hpp"
#include "tnv/gen/random.hpp"
#include "tnv/reduction/reduction.hpp"

using namespace tnv;
using forms::Basis;
using forms::Coords;
using forms::DiffForm;
using forms::VecField;
using sym::Expr;
using sym::Symbol;

namespace {

struct Fixture : ::testing::Test {
  forms::ChartPtr chart = forms::Chart::euler();
  catalog::InvariantFrame fr = catalog::invariant_frame(chart);
  DiffForm d(Symbol s) const { return DiffForm::differential(chart, s); }
  Expr sth = sym::sin(Coords::theta());
  Expr cth = sym::cos(Coords::theta());
};

}  // namespace

TEST_F(Fixture, WedgeExamples) {
  DiffForm dth_dph = forms::wedge(d(Coords::theta()), d(Coords::phi()));
  EXPECT_EQ(forms::wedge(fr.sigma_x, fr.sigma_y), sth * dth_dph);
  EXPECT_TRUE(forms::wedge(fr.sigma_x, fr.sigma_x).is_zero());
  EXPECT_EQ(forms::wedge(d(Coords::r()), fr.sigma_z),
            forms::wedge(d(Coords::r()), d(Coords::psi())) + cth * forms::wedge(d(Coords::r()), d(Coords::phi())));
  // graded commutativity for 1-forms and 2-forms
  auto a = forms::wedge(d(Coords::r()), d(Coords::psi()));
  EXPECT_EQ(forms::wedge(a, fr.sigma_x), forms::wedge(fr.sigma_x, a));
  EXPECT_EQ(forms::wedge(fr.sigma_x, fr.sigma_y), -forms::wedge(fr.sigma_y, fr.sigma_x));
}

TEST_F(Fixture, DegreeAndBasisErrors) {
  auto four = forms::wedge(forms::wedge(d(Coords::r()), d(Coords::psi())), forms::wedge(d(Coords::theta()), d(Coords::phi())));
  EXPECT_THROW((void)(d(Coords::r()) + four), DegreeError);
  EXPECT_THROW(forms::wedge(d(Coords::r()), DiffForm::unit(chart, 0, Basis::frame)), BasisMismatch);
}

TEST_F(Fixture, ExteriorDerivative) {
  DiffForm dth_dph = forms::wedge(d(Coords::theta()), d(Coords::phi()));
  EXPECT_EQ(forms::ext_d(fr.sigma_z), -sth * dth_dph);
  EXPECT_TRUE(forms::ext_d(d(Coords::r())).is_zero());
  EXPECT_EQ(forms::ext_d(fr.sigma_z), -forms::wedge(fr.sigma_x, fr.sigma_y));
  EXPECT_EQ(forms::ext_d(fr.sigma_x), -forms::wedge(fr.sigma_y, fr.sigma_z));
  EXPECT_EQ(forms::ext_d(fr.sigma_y), -forms::wedge(fr.sigma_z, fr.sigma_x));
  // d f = f_r dr + f_theta dtheta
  Expr f = Expr(Coords::r()) * cth;
  EXPECT_EQ(forms::ext_d(DiffForm::scalar(chart, f)), cth * d(Coords::r()) - Expr(Coords::r()) * sth * d(Coords::theta()));
}

TEST_F(Fixture, Interior) {
  auto dpsi = VecField::partial(chart, Coords::psi());
  auto dth = VecField::partial(chart, Coords::theta());
  auto dph = VecField::partial(chart, Coords::phi());
  EXPECT_EQ(forms::interior(dpsi, fr.sigma_z).coeff(0), Expr(1));
  EXPECT_EQ(forms::interior(dth, sth * forms::wedge(d(Coords::theta()), d(Coords::phi()))), sth * d(Coords::phi()));
  EXPECT_EQ(forms::interior(dph, fr.sigma_x).coeff(0), -sth * sym::cos(Coords::psi()));
}

TEST_F(Fixture, LieDerivativeAlongPsi) {
  auto dpsi = VecField::partial(chart, Coords::psi());
  EXPECT_TRUE(forms::lie_form(dpsi, fr.sigma_z).is_zero());
  EXPECT_EQ(forms::lie_form(dpsi, fr.sigma_x), fr.sigma_y);
  EXPECT_EQ(forms::lie_form(dpsi, fr.sigma_y), -fr.sigma_x);
}

TEST_F(Fixture, KillingAlgebra) {
  auto ks = catalog::killing_fields(chart);
  EXPECT_EQ(forms::lie_vec(ks[1], ks[2]), -ks[3]);
  EXPECT_EQ(forms::lie_vec(ks[2], ks[3]), -ks[1]);
  EXPECT_EQ(forms::lie_vec(ks[3], ks[1]), -ks[2]);
  for (int i = 1; i < 4; ++i) EXPECT_TRUE(forms::lie_vec(ks[0], ks[i]).is_zero());
}

TEST_F(Fixture, HodgeExamples) {
  forms::Signature eta{-1, 1, 1, 1};
  auto u = [&](int i) { return DiffForm::unit(chart, i, Basis::frame); };
  EXPECT_EQ(forms::hodge_frame(forms::wedge(u(0), u(1)), eta), -forms::wedge(u(2), u(3)));
  EXPECT_EQ(forms::hodge_frame(forms::wedge(u(2), u(3)), eta), forms::wedge(u(0), u(1)));
  auto vol = forms::wedge(forms::wedge(u(0), u(1)), forms::wedge(u(2), u(3)));
  EXPECT_EQ(forms::hodge_frame(DiffForm::scalar(chart, Expr(1), Basis::frame), eta), vol);
  EXPECT_EQ(forms::hodge_frame(vol, eta), DiffForm::scalar(chart, Expr(-1), Basis::frame));
  EXPECT_THROW(forms::hodge_frame(d(Coords::r()), eta), BasisMismatch);
}

// Oracle: *theta^I = eps(I,J) prod_{i in I} eta_i theta^J with the Levi-Civita
// symbol computed by counting inversions of the concatenated index list.
TEST_F(Fixture, HodgeAgainstLeviCivita) {
  forms::Signature eta{-1, 1, 1, 1};
  for (forms::IndexMask m = 0; m < 16; ++m) {
    std::vector<int> idx = forms::mask_indices(m), rest;
    for (int i = 0; i < 4; ++i)
      if (!(m & (1u << i))) rest.push_back(i);
    std::vector<int> all = idx;
    all.insert(all.end(), rest.begin(), rest.end());
    int inv = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) inv += all[i] > all[j];
    int sign = inv % 2 ? -1 : 1;
    for (int i : idx) sign *= eta[static_cast<std::size_t>(i)];
    DiffForm a(chart, static_cast<int>(idx.size()), Basis::frame);
    a.add(m, Expr(1));
    DiffForm want(chart, 4 - static_cast<int>(idx.size()), Basis::frame);
    want.add(15u & ~m, Expr(sign));
    EXPECT_EQ(forms::hodge_frame(a, eta), want) << "mask " << m;
  }
}

TEST_F(Fixture, FrameConversion) {
  auto t = curv::formal_tetrad(1);
  const auto& v = reduction::vars();
  EXPECT_EQ(t.theta(2).component({2}), Expr(v.R));
  auto w = forms::wedge(t.theta(0), t.theta(1));
  EXPECT_EQ(w, Expr(v.A) * Expr(v.B) * forms::wedge(d(Coords::r()), fr.sigma_z));
  // matrix-multiply oracle on the single coefficient
  EXPECT_EQ(w.component({0, 1}), Expr(v.A) * Expr(v.B));
  EXPECT_EQ(t.coframe().to_frame(w), forms::wedge(DiffForm::unit(chart, 0, Basis::frame), DiffForm::unit(chart, 1, Basis::frame)));
  gen::Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    auto a = gen::random_form(rng, chart, 2);
    EXPECT_EQ(t.coframe().to_coordinate(t.coframe().to_frame(a)), a);
  }
}

TEST_F(Fixture, SingularCoframe) {
  std::vector<DiffForm> th{d(Coords::r()), d(Coords::r()), d(Coords::theta()), d(Coords::phi())};
  EXPECT_THROW(forms::Coframe c(th), SingularCoframe);
}

TEST_F(Fixture, DualStructure) {
  auto good = forms::dual_structure_check({fr.sigma_z, fr.sigma_x, fr.sigma_y}, fr.constants);
  EXPECT_EQ(good.status, report::Status::pass) << good.residual;
  forms::StructureConstants zero(3, std::vector<std::vector<Expr>>(3, std::vector<Expr>(3, Expr(0))));
  auto ab = forms::dual_structure_check({d(Coords::psi()), d(Coords::theta()), d(Coords::phi())}, zero);
  EXPECT_EQ(ab.status, report::Status::pass);
  auto wrong = fr.constants;
  wrong[0][1][2] = -wrong[0][1][2];
  wrong[0][2][1] = -wrong[0][2][1];
  auto bad = forms::dual_structure_check({fr.sigma_z, fr.sigma_x, fr.sigma_y}, wrong);
  EXPECT_EQ(bad.status, report::Status::fail);
  EXPECT_NE(bad.residual, "0");
}

TEST_F(Fixture, MetricIdentities) {
  auto sq = forms::square(fr.sigma_x) + forms::square(fr.sigma_y);
  auto round = forms::square(d(Coords::theta())) + sth * sth * forms::square(d(Coords::phi()));
  EXPECT_EQ(sq, round);
  auto g = catalog::canonical_orbit_metric(1, Expr(1), Expr(1));
  auto ofr = catalog::invariant_frame(forms::Chart::orbit());
  EXPECT_EQ(g, forms::square(ofr.sigma_z) + forms::square(ofr.sigma_x) + forms::square(ofr.sigma_y));
}
