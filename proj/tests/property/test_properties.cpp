#include <set>

#include <gtest/gtest.h>

#include "tnv/cli/suites.hpp"
#include "tnv/forms/chart.hpp"
#include "tnv/gen/random.hpp"

using namespace tnv;
using forms::Coords;
using sym::Expr;

namespace {

const std::vector<report::Check>& sweeps() {
  static const auto checks = cli::property_checks(20240601, 200);
  return checks;
}

}  // namespace

class Sweep : public ::testing::TestWithParam<std::string> {};

TEST_P(Sweep, ZeroFailures) {
  const report::Check* hit = nullptr;
  for (const auto& c : sweeps())
    if (c.id == GetParam()) hit = &c;
  ASSERT_NE(hit, nullptr);
  EXPECT_EQ(hit->status, report::Status::pass) << hit->residual;
  EXPECT_EQ(hit->residual.rfind("0 failures in 200", 0), 0u) << hit->residual;
}

INSTANTIATE_TEST_SUITE_P(All, Sweep,
                         ::testing::Values("property-ring-axioms", "property-diff-commute", "property-substitute-diff",
                                           "property-numeric-enclosure", "property-d-squared",
                                           "property-cartan-formula", "property-jacobi", "property-hodge-double-star",
                                           "property-frame-round-trip", "property-bianchi"),
                         [](const auto& info) {
                           std::string s = info.param.substr(9);
                           for (char& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

// The generators must actually vary, otherwise 200 instances prove little.
TEST(Generators, Distinct) {
  std::set<std::string> exprs, forms2;
  auto chart = forms::Chart::euler();
  for (std::uint64_t s = 0; s < 50; ++s) {
    gen::Rng rng(s);
    exprs.insert(gen::random_expr(rng).str());
    forms2.insert(gen::random_form(rng, chart, 2).str());
  }
  EXPECT_GT(exprs.size(), 40u);
  EXPECT_GT(forms2.size(), 40u);
}

// Negative controls: the same generators feed identities that do not hold.
TEST(NegativeControls, CaughtOnRandomInstances) {
  auto chart = forms::Chart::euler();
  int diff_not_commuting_with_mult = 0, wedge_not_commuting = 0, d_not_leibniz_plus = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    gen::Rng rng(s);
    Expr a = gen::random_expr(rng), b = gen::random_expr(rng);
    // d(ab) = a' b' is false in general
    if (!sym::is_zero(sym::diff(a * b, Coords::r()) - sym::diff(a, Coords::r()) * sym::diff(b, Coords::r())))
      ++diff_not_commuting_with_mult;
    auto x = gen::random_form(rng, chart, 1), y = gen::random_form(rng, chart, 1);
    if (!(forms::wedge(x, y) - forms::wedge(y, x)).is_zero()) ++wedge_not_commuting;
    // wrong sign in the graded Leibniz rule; differs by 2 x ^ dy
    auto lhs = forms::ext_d(forms::wedge(x, y));
    auto wrong = forms::wedge(forms::ext_d(x), y) + forms::wedge(forms::ext_d(y), x);
    if (!(lhs - wrong).is_zero()) ++d_not_leibniz_plus;
  }
  EXPECT_GT(diff_not_commuting_with_mult, 150);
  EXPECT_GT(wedge_not_commuting, 150);
  EXPECT_GT(d_not_leibniz_plus, 100);
}
