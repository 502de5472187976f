#include "tnv/curv/displays.hpp"

#include <map>

#include "tnv/catalog/catalog.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/calculus.hpp"
#include "tnv/parse/parser.hpp"

namespace tnv::curv {

using forms::Basis;

namespace {

const std::string kMixed = "(B R'/(A R^3) - B'/(A R^2))";
const std::string kMixedNeg = "(B'/(A R^2) - B R'/(A R^3))";

CaseDisplays spacelike() {
  CaseDisplays d;
  d.eps = 1;
  d.dtheta = {
      {0, -1, {}},
      {1, -1, {{{0, 1}, "B'/(A B)"}, {{2, 3}, "-B/R^2"}}},
      {2, -1, {{{0, 2}, "R'/(A R)"}}},
      {3, -1, {{{0, 3}, "R'/(A R)"}, {{2, 3}, "cot(theta)/R"}}},
  };
  d.connection = {
      {0, 1, {{{1}, "B'/(A B)"}}},
      {0, 2, {{{2}, "R'/(A R)"}}},
      {0, 3, {{{3}, "R'/(A R)"}}},
      {1, 2, {{{3}, "-B/(2 R^2)"}}},
      {1, 3, {{{2}, "B/(2 R^2)"}}},
      {2, 3, {{{1}, "B/(2 R^2)"}, {{3}, "-cot(theta)/R"}}},
  };
  d.curvature = {
      {0, 1, {{{0, 1}, "B''/(A^2 B) - B' A'/(A^3 B)"}, {{2, 3}, kMixed}}},
      {0, 2, {{{0, 2}, "R''/(A^2 R) - R' A'/(A^3 R)"}, {{1, 3}, "-1/2 " + kMixedNeg}}},
      {0, 3, {{{0, 3}, "R''/(A^2 R) - R' A'/(A^3 R)"}, {{1, 2}, "1/2 " + kMixedNeg}}},
      {1, 2, {{{0, 3}, "1/2 " + kMixed}, {{1, 2}, "B' R'/(A^2 B R) + B^2/(4 R^4)"}}},
      {1, 3, {{{0, 2}, "1/2 " + kMixedNeg}, {{1, 3}, "B' R'/(A^2 B R) + B^2/(4 R^4)"}}},
      {2, 3, {{{0, 1}, kMixedNeg}, {{2, 3}, "1/R^2 + R'^2/(A^2 R^2) - 3/4 B^2/R^4"}}},
  };
  d.riemann = {
      {{0, 1, 0, 1}, "B''/(A^2 B) - B' A'/(A^3 B)"},
      {{0, 1, 2, 3}, kMixed},
      {{0, 2, 1, 3}, "1/2 " + kMixed},
      {{0, 3, 1, 2}, "-1/2 " + kMixed},
      {{0, 2, 0, 2}, "R''/(A^2 R) - R' A'/(A^3 R)"},
      {{0, 3, 0, 3}, "R''/(A^2 R) - R' A'/(A^3 R)"},
      {{1, 2, 1, 2}, "B' R'/(A^2 B R) + B^2/(4 R^4)"},
      {{1, 3, 1, 3}, "B' R'/(A^2 B R) + B^2/(4 R^4)"},
      {{2, 3, 2, 3}, "1/R^2 + R'^2/(A^2 R^2) - 3/4 B^2/R^4"},
  };
  return d;
}

CaseDisplays timelike() {
  CaseDisplays d;
  d.eps = -1;
  d.dtheta = {
      {0, -1, {{{1, 0}, "B'/(A B)"}, {{2, 3}, "-B/R^2"}}},
      {1, -1, {}},
      {2, -1, {{{1, 2}, "R'/(A R)"}}},
      {3, -1, {{{1, 3}, "R'/(A R)"}, {{2, 3}, "cot(theta)/R"}}},
  };
  d.connection = {
      {0, 1, {{{0}, "B'/(A B)"}}},
      {0, 2, {{{3}, "-B/(2 R^2)"}}},
      {0, 3, {{{2}, "B/(2 R^2)"}}},
      {1, 2, {{{2}, "-R'/(A R)"}}},
      {1, 3, {{{3}, "-R'/(A R)"}}},
      {2, 3, {{{0}, "-B/(2 R^2)"}, {{3}, "-cot(theta)/R"}}},
  };
  d.curvature = {
      {0, 1, {{{0, 1}, "-(B''/(A^2 B) - B' A'/(A^3 B))"}, {{2, 3}, kMixed}}},
      {0, 2, {{{1, 3}, "1/2 " + kMixed}, {{0, 2}, "-(B' R'/(A^2 B R) + B^2/(4 R^4))"}}},
      {0, 3, {{{1, 2}, "1/2 " + kMixedNeg}, {{0, 3}, "-(B' R'/(A^2 B R) + B^2/(4 R^4))"}}},
      {1, 2, {{{1, 2}, "-(R''/(A^2 R) - R' A'/(A^3 R))"}, {{0, 3}, "-1/2 " + kMixedNeg}}},
      {1, 3, {{{1, 3}, "-(R''/(A^2 R) - R' A'/(A^3 R))"}, {{0, 2}, "-1/2 " + kMixedNeg}}},
      {2, 3, {{{0, 1}, kMixedNeg}, {{2, 3}, "1/R^2 - R'^2/(A^2 R^2) + 3/4 B^2/R^4"}}},
  };
  d.riemann = {
      {{0, 1, 0, 1}, "-B''/(A^2 B) + B' A'/(A^3 B)"},
      {{0, 1, 2, 3}, kMixed},
      {{0, 2, 1, 3}, "1/2 " + kMixed},
      {{0, 3, 1, 2}, "-1/2 " + kMixed},
      {{0, 2, 0, 2}, "-B' R'/(A^2 B R) - B^2/(4 R^4)"},
      {{0, 3, 0, 3}, "-B' R'/(A^2 B R) - B^2/(4 R^4)"},
      {{1, 2, 1, 2}, "-R''/(A^2 R) + R' A'/(A^3 R)"},
      {{1, 3, 1, 3}, "-R''/(A^2 R) + R' A'/(A^3 R)"},
      {{2, 3, 2, 3}, "1/R^2 - R'^2/(A^2 R^2) + 3/4 B^2/R^4"},
  };
  return d;
}

std::string form_label(const char* what, int a, int b) {
  std::string s = what;
  s += std::to_string(a);
  if (b >= 0) s += std::to_string(b);
  return s;
}

void compare_forms(const std::string& label, const DiffForm& engine, const DiffForm& shown,
                   std::vector<std::pair<std::string, Expr>>& out) {
  DiffForm d = engine - shown;
  for (const auto& [m, v] : d.terms()) {
    std::string idx;
    for (int i : forms::mask_indices(m)) idx += std::to_string(i);
    out.emplace_back(label + " on theta" + idx, v);
  }
}

Expr lowered(const Array4<Expr>& r, const Signature& eta, int a, int b, int c, int d) {
  const Expr& v = r[a][b][c][d];
  return eta[static_cast<std::size_t>(a)] > 0 ? v : -v;
}

}  // namespace

const CaseDisplays& case_displays(int eps) {
  static const CaseDisplays s = spacelike();
  static const CaseDisplays t = timelike();
  if (eps == 1) return s;
  if (eps == -1) return t;
  throw UnknownCase("eps must be +1 or -1");
}

Tetrad formal_tetrad(int eps) {
  auto ctx = parse::Context::standard();
  auto model = catalog::generalized_family(eps, ctx.names.at("A"), ctx.names.at("B"), ctx.names.at("R"));
  return *model.tetrad;
}

DiffForm display_form(const forms::ChartPtr& chart, const FormDisplay& d, int degree) {
  auto ctx = parse::Context::standard();
  DiffForm f(chart, degree, Basis::frame);
  for (const auto& t : d.terms) {
    Expr c = parse::parse_expr(t.coeff, ctx);
    DiffForm basis = DiffForm::scalar(chart, Expr(1), Basis::frame);
    for (int i : t.idx) basis = forms::wedge(basis, DiffForm::unit(chart, i, Basis::frame));
    f = f + c * basis;
  }
  return f;
}

Array4<Expr> expand_riemann(const std::vector<RiemannDisplay>& list, const Signature& eta,
                            std::vector<std::string>* conflicts) {
  auto ctx = parse::Context::standard();
  Array4<Expr> low{};
  Array4<bool> set{};
  for (const auto& e : list) {
    auto [a, b, c, d] = e.idx;
    Expr v = parse::parse_expr(e.value, ctx);
    if (eta[static_cast<std::size_t>(a)] < 0) v = -v;
    const std::array<std::pair<std::array<int, 4>, int>, 8> images{{{{a, b, c, d}, 1},
                                                                      {{b, a, c, d}, -1},
                                                                      {{a, b, d, c}, -1},
                                                                      {{b, a, d, c}, 1},
                                                                      {{c, d, a, b}, 1},
                                                                      {{d, c, a, b}, -1},
                                                                      {{c, d, b, a}, -1},
                                                                      {{d, c, b, a}, 1}}};
    for (const auto& [ix, s] : images) {
      Expr w = s > 0 ? v : -v;
      auto& slot = low[ix[0]][ix[1]][ix[2]][ix[3]];
      bool& seen = set[ix[0]][ix[1]][ix[2]][ix[3]];
      if (seen && slot != w && conflicts != nullptr) {
        conflicts->push_back("R_" + std::to_string(ix[0]) + std::to_string(ix[1]) + std::to_string(ix[2]) +
                             std::to_string(ix[3]));
      }
      slot = w;
      seen = true;
    }
  }
  return low;
}

std::vector<report::Check> display_checks(int eps, std::uint64_t seed) {
  const CaseDisplays& disp = case_displays(eps);
  Tetrad t = formal_tetrad(eps);
  CurvatureBundle b = compute_bundle(t);
  const auto& chart = t.chart();
  const Signature& eta = t.eta();
  std::string tag = eps == 1 ? "spacelike" : "timelike";
  std::vector<report::Check> out;

  std::vector<std::pair<std::string, Expr>> res;
  for (const auto& d : disp.dtheta) {
    compare_forms(form_label("dtheta", d.a, -1), t.coframe().d_frame(static_cast<std::size_t>(d.a)),
                  display_form(chart, d, 2), res);
  }
  out.push_back(report::display_check(tag + "-dtheta", "exterior derivatives of the tetrad", res, seed));

  res.clear();
  for (const auto& d : disp.connection) {
    DiffForm shown = display_form(chart, d, 1);
    compare_forms(form_label("omega", d.a, d.b), b.connection[d.a][d.b], shown, res);
    // omega^b_a = -eta_a eta_b omega^a_b
    int s = -eta[static_cast<std::size_t>(d.a)] * eta[static_cast<std::size_t>(d.b)];
    compare_forms(form_label("omega", d.b, d.a), b.connection[d.b][d.a], Expr(s) * shown, res);
  }
  for (std::size_t a = 0; a < 4; ++a) {
    if (!b.connection[a][a].is_zero()) res.emplace_back(form_label("omega", static_cast<int>(a), static_cast<int>(a)), Expr(1));
  }
  out.push_back(report::display_check(tag + "-connection", "connection one-forms", res, seed));

  auto defining = metricity_residuals(t, b.connection);
  auto torsion = torsion_residuals(t, b.connection);
  defining.insert(defining.end(), torsion.begin(), torsion.end());
  out.push_back(report::zero_check(tag + "-connection-residuals", "first structure equation", defining, seed));

  res.clear();
  for (const auto& d : disp.curvature) {
    compare_forms(form_label("Omega", d.a, d.b), b.curvature[d.a][d.b], display_form(chart, d, 2), res);
  }
  out.push_back(report::display_check(tag + "-curvature-forms", "curvature two-forms", res, seed));

  res.clear();
  std::vector<std::string> conflicts;
  Array4<Expr> shown = expand_riemann(disp.riemann, eta, &conflicts);
  for (const auto& c : conflicts) res.emplace_back("symmetry conflict in listed " + c, Expr(1));
  for (int a = 0; a < 4; ++a) {
    for (int bb = a + 1; bb < 4; ++bb) {
      for (int c = 0; c < 4; ++c) {
        for (int d = c + 1; d < 4; ++d) {
          Expr diff = lowered(b.riemann, eta, a, bb, c, d) - shown[a][bb][c][d];
          res.emplace_back("R_" + std::to_string(a) + std::to_string(bb) + std::to_string(c) + std::to_string(d), diff);
        }
      }
    }
  }
  out.push_back(report::display_check(tag + "-riemann", "non-vanishing Riemann components", res, seed));

  const auto& R = b.riemann;
  res = {{"R0123 - 2 R0213", R[0][1][2][3] - Expr(2) * R[0][2][1][3]},
         {"R0123 + 2 R0312", R[0][1][2][3] + Expr(2) * R[0][3][1][2]}};
  out.push_back(report::zero_check(tag + "-riemann-pairing", "non-vanishing Riemann components", res, seed));

  Expr r0101 = R[0][1][0][1], r0202 = R[0][2][0][2], r1212 = R[1][2][1][2], r2323 = R[2][3][2][3];
  if (eps == 1) {
    res.clear();
    Array2<Expr> want{};
    want[0][0] = -r0101 - Expr(2) * r0202;
    want[1][1] = r0101 + Expr(2) * r1212;
    want[2][2] = want[3][3] = r0202 + r1212 + r2323;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) res.emplace_back("R_" + std::to_string(i) + std::to_string(j), b.ricci[i][j] - want[i][j]);
    }
    res.emplace_back("scalar", b.scalar - Expr(2) * (r0101 + Expr(2) * r1212 + Expr(2) * r0202 + r2323));
    out.push_back(report::display_check(tag + "-ricci", "components of the Ricci tensor", res, seed));
  }

  res.clear();
  Array2<Expr> want{};
  want[0][0] = Expr(2) * r1212 + r2323;
  want[1][1] = Expr(-2) * r0202 - r2323;
  want[2][2] = want[3][3] = -r0202 - r1212 - r0101;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) res.emplace_back("G_" + std::to_string(i) + std::to_string(j), b.einstein[i][j] - want[i][j]);
  }
  out.push_back(report::display_check(tag + "-einstein", "non-vanishing Einstein components", res, seed));

  out.push_back(report::zero_check(tag + "-bianchi", "first Bianchi identity", bianchi_residuals(b.riemann), seed));
  out.push_back(report::zero_check(tag + "-ricci-symmetry", "Ricci symmetry", ricci_symmetry_residuals(b.ricci), seed));
  return out;
}

}  // namespace tnv::curv
