#include "tnv/charges/charges.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "tnv/errors.hpp"
#include "tnv/forms/calculus.hpp"
#include "tnv/forms/chart.hpp"

namespace tnv::charges {

using forms::Basis;
using forms::Coords;
using report::Report;

namespace {

constexpr forms::IndexMask bit(int i) { return 1u << i; }

// lim N/D for polynomials in r
Expr rational_limit(const sym::Poly& n, const sym::Poly& d, Symbol r, const Expr& e) {
  if (n.is_zero()) return Expr(0);
  auto nc = n.coefficients_in(r.id());
  auto dc = d.coefficients_in(r.id());
  if (nc.size() < dc.size()) return Expr(0);
  if (nc.size() > dc.size()) throw Divergent(e.str() + " grows without bound as " + r.name() + " -> infinity");
  return Expr::fraction(nc.back(), dc.back());
}

void require_killing(const catalog::SpacetimeModel& model, const VecField& k) {
  SymTensor2 lg = forms::lie_metric(k, model.metric);
  if (!lg.is_zero()) throw NotKilling("k is not a Killing field of " + model.name);
  if (!model.tetrad) throw BadParams("model " + model.name + " has no tetrad");
  // timelike near infinity
  Expr norm(0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) norm += model.metric(i, j) * k[i] * k[j];
  }
  Expr lim = limit_at_infinity(norm, Coords::r());
  auto q = lim.rational_value();
  if (!q || *q >= 0) throw NotTimelikeRegion("g(k, k) does not tend to a negative constant: " + lim.str());
}

ChargeResult finish(DiffForm form) {
  ChargeResult out{form, restrict_to_radius(form), Expr(0), Expr(0), Expr(0)};
  auto chart = form.chart();
  int ith = chart->index_of(Coords::theta());
  int iph = chart->index_of(Coords::phi());
  out.coefficient = out.restricted.coeff(bit(ith) | bit(iph)) / sym::sin(Coords::theta());
  // -(1/8 pi) * c * 4 pi
  out.value = -out.coefficient / Expr(2);
  out.limit = limit_at_infinity(out.value, Coords::r());
  return out;
}

Report new_report(std::uint64_t seed) {
  Report r;
  r.suite = "charges";
  r.engine_version = report::engine_version();
  r.seed = seed;
  return r;
}

std::vector<std::pair<std::string, Expr>> form_residuals(const DiffForm& a, const DiffForm& b) {
  std::vector<std::pair<std::string, Expr>> res;
  DiffForm d = a - b;
  for (const auto& [m, c] : d.terms()) {
    std::string idx;
    for (int i : forms::mask_indices(m)) idx += std::to_string(i);
    res.emplace_back((a.basis() == Basis::frame ? "theta" : "dx") + idx, c);
  }
  if (res.empty()) res.emplace_back("all", Expr(0));
  return res;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

report::Check table_check(const std::string& id, const std::string& anchor, const Expr& value, const Expr& limit,
                          const sym::RationalPoint& point, double tol_at_1e5) {
  auto rows = convergence_table(value, limit, point, default_radii());
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].error < rows[i - 1].error;
  double at5 = rows[2].error;
  std::string text = "errors";
  for (const auto& r : rows) text += " " + fmt(r.error);
  text += "; order " + fmt(convergence_order(rows));
  return report::bool_check(id, anchor, monotone && at5 < tol_at_1e5, text);
}

}  // namespace

VecField komar_field(const catalog::SpacetimeModel& model) {
  if (model.chart->index_of(Coords::psi()) < 0 || !model.params.count("l"))
    throw BadParams("model " + model.name + " is not on the (r, psi, theta, phi) chart of Taub-NUT");
  Expr l = model.params.at("l");
  return (Expr(-1) / (Expr(2) * l)) * VecField::partial(model.chart, Coords::psi());
}

DiffForm flat(const VecField& k, const SymTensor2& g) {
  std::vector<Expr> c(g.dim(), Expr(0));
  for (std::size_t j = 0; j < g.dim(); ++j) {
    for (std::size_t i = 0; i < g.dim(); ++i) c[j] += g(i, j) * k[i];
  }
  return DiffForm::one_form(g.chart(), c);
}

DiffForm restrict_to_radius(const DiffForm& a) {
  int ir = a.chart()->index_of(Coords::r());
  DiffForm out(a.chart(), a.degree(), a.basis());
  for (const auto& [m, c] : a.terms()) {
    if ((m & bit(ir)) == 0) out.add(m, c);
  }
  return out;
}

ChargeResult komar_mass(const catalog::SpacetimeModel& model, const VecField& k) {
  require_killing(model, k);
  const auto& t = *model.tetrad;
  DiffForm dk = forms::ext_d(flat(k, model.metric));
  DiffForm star = t.coframe().to_coordinate(forms::hodge_frame(t.coframe().to_frame(dk), t.eta()));
  return finish(star);
}

ChargeResult dual_charge(const catalog::SpacetimeModel& model, const VecField& k) {
  require_killing(model, k);
  return finish(forms::ext_d(flat(k, model.metric)));
}

Expr limit_at_infinity(const Expr& e, Symbol r) {
  std::optional<Symbol> rad;
  for (sym::SymbolId id : e.variables()) {
    Symbol v(id);
    if (v.kind() != sym::SymbolKind::radical || !v.radicand().contains(r.id())) continue;
    if (rad) throw Error("limit: more than one radical depends on " + r.name());
    rad = v;
  }
  if (!rad) return rational_limit(e.num(), e.den(), r, e);
  const sym::Poly& q = rad->radicand();
  auto qc = q.coefficients_in(r.id());
  if (qc.size() != 3 || !qc[2].is_one()) throw Error("limit: radical " + rad->name() + " is not monic quadratic in " + r.name());

  // num = P + Q s with s ~ r + b/2, den free of s
  auto sc = e.num().coefficients_in(rad->id());
  sym::Poly p = sc.empty() ? sym::Poly(0) : sc[0];
  sym::Poly qq = sc.size() > 1 ? sc[1] : sym::Poly(0);
  const sym::Poly& d = e.den();
  if (qq.is_zero()) return rational_limit(p, d, r, e);
  sym::Poly x = sym::Poly::variable(r);
  sym::Poly lead = p + qq * x;
  // Q (s - r) is O(r^deg Q); it only matters when P + Q r cancels down to that order
  if (!lead.is_zero() && lead.degree(r.id()) > qq.degree(r.id())) return rational_limit(lead, d, r, e);
  // P + Q s = (P^2 - Q^2 q)/(P - Q s) and P - Q s ~ P - Q r without cancellation
  return rational_limit(p * p - qq * qq * q, d * (p - qq * x), r, e);
}

std::vector<ConvergenceRow> convergence_table(const Expr& value, const Expr& limit, const sym::RationalPoint& point,
                                              const std::vector<mpq_class>& radii) {
  auto bits = sym::default_precision();
  sym::Interval lim = sym::eval_numeric(limit, point, bits);
  std::vector<ConvergenceRow> rows;
  for (const auto& r : radii) {
    sym::RationalPoint p = point;
    p[Coords::r()] = r;
    sym::Interval iv = sym::eval_numeric(value, p, bits);
    sym::Interval err = iv - lim;
    double e = std::max(std::fabs(err.lo_double()), std::fabs(err.hi_double()));
    rows.push_back({r, static_cast<double>(iv.mid_long_double()), e});
  }
  return rows;
}

std::vector<mpq_class> default_radii() { return {mpq_class(1000), mpq_class(10000), mpq_class(100000), mpq_class(1000000)}; }

double convergence_order(const std::vector<ConvergenceRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (const auto& r : rows) {
    if (r.error <= 0) continue;
    double x = std::log10(r.r.get_d());
    double y = std::log10(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  if (n < 2) return 0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Report charges_report(std::uint64_t seed) {
  Report rep = new_report(seed);
  Symbol ms = Symbol::parameter("m"), ls = Symbol::parameter("l");
  Expr m(ms), l(ls), r(Coords::r());
  auto model = catalog::taub_nut(m, l);
  const auto& t = *model.tetrad;
  const auto& chart = model.chart;
  VecField k = komar_field(model);
  Expr f = catalog::taub_nut_f(m, l, r);
  Expr fp = sym::diff(f, Coords::r());
  Expr rho2 = r * r + l * l;
  DiffForm sz = catalog::invariant_frame(chart).sigma_z;
  DiffForm dr = DiffForm::differential(chart, Coords::r());
  DiffForm area = sym::sin(Coords::theta()) *
                  forms::wedge(DiffForm::differential(chart, Coords::theta()), DiffForm::differential(chart, Coords::phi()));
  auto th = [&](int a, int b) {
    return forms::wedge(DiffForm::unit(chart, a, Basis::frame), DiffForm::unit(chart, b, Basis::frame));
  };
  const char* anchor = "Komar mass";

  rep.checks.push_back(report::bool_check("charges-k-killing", "Killing normalisation",
                                          forms::lie_metric(k, model.metric).is_zero(), "L_k g = 0"));
  DiffForm kf = flat(k, model.metric);
  rep.checks.push_back(report::display_check("charges-k-flat", "Killing normalisation",
                                             form_residuals(kf, Expr(2) * l * f * sz), seed));
  DiffForm dk = forms::ext_d(kf);
  rep.checks.push_back(report::display_check("charges-dk-coordinate", anchor,
                                             form_residuals(dk, Expr(2) * l * fp * forms::wedge(dr, sz) - Expr(2) * l * f * area),
                                             seed));
  DiffForm dk_frame = t.coframe().to_frame(dk);
  rep.checks.push_back(report::display_check("charges-dk-frame", anchor,
                                             form_residuals(dk_frame, -fp * th(0, 1) - Expr(2) * l * f / rho2 * th(2, 3)),
                                             seed));
  DiffForm star_frame = forms::hodge_frame(dk_frame, t.eta());
  rep.checks.push_back(report::display_check("charges-star-frame", anchor,
                                             form_residuals(star_frame, fp * th(2, 3) - Expr(2) * l * f / rho2 * th(0, 1)),
                                             seed));
  DiffForm star = t.coframe().to_coordinate(star_frame);
  rep.checks.push_back(report::display_check(
      "charges-star-coordinate", anchor,
      form_residuals(star, fp * rho2 * area + Expr(4) * l * l * f / rho2 * forms::wedge(dr, sz)), seed));

  ChargeResult komar = komar_mass(model, k);
  ChargeResult dual = dual_charge(model, k);
  DiffForm dsz = forms::ext_d(sz);
  rep.checks.push_back(report::display_check("charges-star-restricted", anchor,
                                             form_residuals(komar.restricted, -fp * rho2 * dsz), seed));
  {
    auto res = form_residuals(komar.restricted, -komar.coefficient * dsz);
    auto res2 = form_residuals(dual.restricted, -dual.coefficient * dsz);
    for (auto& p : res) p.first = "star dk: " + p.first;
    for (auto& p : res2) res.emplace_back("dk: " + p.first, p.second);
    rep.checks.push_back(report::zero_check("charges-horizontal", anchor, res, seed));
  }
  {
    auto res = form_residuals(forms::ext_d(komar.form), DiffForm(chart, 3));
    rep.checks.push_back(report::zero_check("charges-star-closed", anchor, res, seed));
  }
  rep.checks.push_back(report::zero_check("charges-komar-value", anchor, komar.value + fp * rho2 / Expr(2), seed));
  rep.checks.push_back(report::zero_check("charges-komar-limit", anchor, komar.limit + m, seed));
  rep.checks.push_back(report::zero_check("charges-dual-value", "dual charge", dual.value - l * f, seed));
  rep.checks.push_back(report::zero_check("charges-dual-limit", "dual charge", dual.limit - l, seed));

  sym::RationalPoint p11{{ms, mpq_class(1)}, {ls, mpq_class(1)}};
  rep.checks.push_back(table_check("charges-komar-table", anchor, komar.value, komar.limit, p11, 1e-4));
  rep.checks.push_back(table_check("charges-dual-table", "dual charge", dual.value, dual.limit, p11, 1e-4));
  {
    sym::RationalPoint p12{{ms, mpq_class(1)}, {ls, mpq_class(2)}};
    auto rows = convergence_table(dual.value, dual.limit, p12, default_radii());
    bool ok = rows[0].error < 1e-2 && rows[3].error < 1e-5;
    rep.checks.push_back(report::bool_check("charges-dual-example", "dual charge", ok,
                                            "m = 1, l = 2: error " + fmt(rows[0].error) + " at 1e3, " + fmt(rows[3].error) +
                                                " at 1e6"));
  }
  {
    auto m0 = catalog::taub_nut(Expr(0), l);
    ChargeResult k0 = komar_mass(m0, komar_field(m0));
    rep.checks.push_back(report::zero_check("charges-massless", anchor, k0.limit, seed));
  }
  {
    auto flip = catalog::taub_nut(m, -l);
    ChargeResult d = dual_charge(flip, komar_field(flip));
    rep.checks.push_back(report::zero_check("charges-l-flip", "dual charge", d.limit + l, seed));
  }
  {
    bool divergent = false;
    try {
      limit_at_infinity(r * f, Coords::r());
    } catch (const Divergent&) {
      divergent = true;
    }
    rep.checks.push_back(report::zero_check("charges-limit-f", "Killing normalisation",
                                            limit_at_infinity(f, Coords::r()) - Expr(1), seed));
    rep.checks.push_back(report::bool_check("charges-limit-divergent", "Killing normalisation", divergent, "r f(r) diverges"));
  }
  {
    bool thrown = false;
    try {
      komar_mass(model, VecField::partial(chart, Coords::r()));
    } catch (const NotKilling&) {
      thrown = true;
    }
    rep.checks.push_back(report::bool_check("charges-not-killing", "Killing normalisation", thrown, "d_r rejected"));
  }
  return rep;
}

}  // namespace tnv::charges
