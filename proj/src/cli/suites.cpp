#include "tnv/cli/suites.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <future>

#include <json.hpp>

#include "tnv/charges/charges.hpp"
#include "tnv/curv/displays.hpp"
#include "tnv/curv/numeric_oracle.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/chart.hpp"
#include "tnv/parse/parser.hpp"
#include "tnv/reduction/reduction.hpp"
#include "tnv/sym/numeric.hpp"

namespace tnv::cli {

using catalog::Branch;
using forms::Coords;
using forms::DiffForm;
using report::Check;
using report::Status;
using sym::Expr;
using sym::Symbol;

mpq_class parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw BadParams("empty rational");
  if (s[0] == '+') s = s.substr(1);
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
      std::string frac = s.substr(dot + 1);
      std::string whole = s.substr(0, dot);
      if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw BadParams("bad decimal");
      // base 10 explicitly: "025" would otherwise read as octal
      mpq_class q(mpz_class(whole + frac, 10), 1);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      q /= den;
      q.canonicalize();
      return q;
    }
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw BadParams("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw BadParams("not a rational: '" + text + "'");
  }
}

Params load_model_file(const std::string& path, Params base) {
  std::ifstream in(path);
  if (!in) throw BadParams("cannot read model file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw BadParams("model file " + path + ": " + e.what());
  }
  auto rational_field = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    throw BadParams("model parameters must be integers or \"p/q\" strings");
  };
  try {
    if (j.contains("name")) {
      std::string name = j["name"].get<std::string>();
      if (name != "taub-nut" && name != "extension") throw BadParams("unknown model '" + name + "'");
      base.model = name;
    }
    if (j.contains("params")) {
      const auto& p = j["params"];
      if (p.contains("m")) base.m = rational_field(p["m"]);
      if (p.contains("l")) base.l = rational_field(p["l"]);
      if (p.contains("n")) base.n = p["n"].get<int>();
      if (p.contains("eps")) base.eps = p["eps"].get<int>();
    }
    if (j.contains("branch")) {
      std::string b = j["branch"].get<std::string>();
      if (b == "psi-prime") base.branch = Branch::psi_prime;
      else if (b == "psi-double-prime") base.branch = Branch::psi_double_prime;
      else throw BadParams("branch must be psi-prime or psi-double-prime");
    }
  } catch (const nlohmann::json::exception& e) {
    throw BadParams("model file " + path + ": " + e.what());
  }
  return base;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra",    "forms",     "killing", "curvature-spacelike",
                                              "curvature-timelike", "extensions", "reduction", "charges",
                                              "kretschmann", "all"};
  return names;
}

namespace {

struct Task {
  std::string name;
  std::function<std::vector<Check>()> run;
};

Check error_check(const std::string& name, const std::string& what) {
  return Check{name + "-error", "engine error", Status::fail, what, 0.0};
}

std::vector<Check> run_tasks(std::vector<Task> tasks, bool timings) {
  std::vector<std::future<std::vector<Check>>> futures;
  futures.reserve(tasks.size());
  for (auto& t : tasks) {
    futures.push_back(std::async(std::launch::async, [t, timings] {
      auto t0 = std::chrono::steady_clock::now();
      std::vector<Check> out;
      try {
        out = t.run();
      } catch (const std::exception& e) {
        out = {error_check(t.name, e.what())};
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (auto& c : out) c.ms = timings ? ms : 0.0;
      return out;
    }));
  }
  std::vector<Check> all;
  for (auto& f : futures) {
    auto part = f.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::stable_sort(all.begin(), all.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  return all;
}

std::vector<Check> from_report(const report::Report& r) { return r.checks; }

Expr param_or_symbol(const std::optional<mpq_class>& q, const char* name) {
  return q ? Expr(*q) : Expr(Symbol::parameter(name));
}

std::vector<int> cases(const Params& p) {
  if (p.eps) {
    reduction::make_case(*p.eps);
    return {*p.eps};
  }
  return {1, -1};
}

std::string case_tag(int eps) { return eps == 1 ? "spacelike" : "timelike"; }

// Symbols whose display names depend on which call creates them first are
// interned here, before any worker thread starts.
void warm_up() {
  reduction::vars();
  reduction::closed_form(reduction::make_case(1));
  reduction::closed_form(reduction::make_case(-1));
  parse::Context::standard();
  catalog::taub_nut(Expr(Symbol::parameter("m")), Expr(Symbol::parameter("l")));
}

// algebra -------------------------------------------------------------------

std::vector<Task> algebra_tasks(std::uint64_t seed) {
  std::vector<Task> t;
  t.push_back({"algebra-identities", [seed] {
    std::vector<Check> out;
    const auto& v = reduction::vars();
    Expr r(Coords::r()), m(Symbol::parameter("m")), l(Symbol::parameter("l"));
    Expr s2 = sym::sin(Coords::theta()).pow(2) + sym::cos(Coords::theta()).pow(2);
    out.push_back(report::zero_check("algebra-pythagorean", "symbolic core", s2 - Expr(1), seed));
    out.push_back(report::zero_check("algebra-radical-square", "symbolic core", v.s * v.s - (r * r - Expr(v.c0)), seed));
    out.push_back(report::zero_check("algebra-diff-cos", "symbolic core",
                                     sym::diff(sym::cos(Coords::theta()), Coords::theta()) + sym::sin(Coords::theta()), seed));
    Expr a(v.A), b(v.B);
    out.push_back(report::zero_check("algebra-leibniz", "symbolic core",
                                     sym::diff(a * b, v.r) - (sym::diff(a, v.r) * b + a * sym::diff(b, v.r)), seed));
    out.push_back(report::zero_check("algebra-radical-diff", "symbolic core", v.s * sym::diff(v.s, v.r) - Expr(v.r), seed));
    Expr f = catalog::taub_nut_f(m, l, r);
    out.push_back(report::zero_check("algebra-clear-f", "metric function f",
                                     f * (r * r + l * l) - (r * r - Expr(2) * m * r - l * l), seed));
    out.push_back(report::bool_check("algebra-nonzero", "symbolic core", !sym::is_zero(r - m, seed), "r - m is not zero"));
    auto [rp, rm] = catalog::horizons(m, l);
    out.push_back(report::zero_check("algebra-f-at-horizons", "horizons",
                                     {{"f(r+)", sym::substitute(f, {{Coords::r(), rp}})},
                                      {"f(r-)", sym::substitute(f, {{Coords::r(), rm}})}},
                                     seed));
    sym::Bindings m0{{Symbol::parameter("m"), Expr(0)}};
    out.push_back(report::zero_check("algebra-horizons-massless", "horizons",
                                     {{"r+ - l", sym::substitute(rp, m0) - l}, {"r- + l", sym::substitute(rm, m0) + l}}, seed));
    auto [p01, m01] = catalog::horizons(Expr(0), Expr(1));
    auto [p34, m34] = catalog::horizons(Expr(3), Expr(4));
    out.push_back(report::zero_check("algebra-horizons-examples", "horizons",
                                     {{"r+(0,1) - 1", p01 - Expr(1)},
                                      {"r-(0,1) + 1", m01 + Expr(1)},
                                      {"r+(3,4) - 8", p34 - Expr(8)},
                                      {"r-(3,4) + 2", m34 + Expr(2)}},
                                     seed));
    sym::Bindings ones{{v.A, Expr(1)}, {v.B, Expr(1)}, {v.R, Expr(1)}};
    out.push_back(report::zero_check("algebra-substitute-formal", "symbolic core",
                                     sym::substitute(sym::diff(b, v.r) / (a * b), ones), seed));
    {
      sym::Bindings d2{{v.D, sym::sqrt_expr(Expr(4) * r * r * Expr(v.c0) / (r * r - Expr(v.c0)))}};
      out.push_back(report::zero_check("algebra-substitute-d-ode", "D equation",
                                       reduction::d_ode(sym::substitute(Expr(v.D), d2)), seed));
    }
    return out;
  }});
  t.push_back({"algebra-numeric", [seed] {
    std::vector<Check> out;
    mpfr_prec_t bits = sym::default_precision();
    Expr r(Coords::r()), m(Symbol::parameter("m")), l(Symbol::parameter("l"));
    Expr f4 = sym::substitute(catalog::taub_nut_f(m, l, r), {{Symbol::parameter("m"), Expr(1)},
                                                              {Symbol::parameter("l"), Expr(1)},
                                                              {Coords::r(), Expr(4)}});
    auto q = f4.rational_value();
    out.push_back(report::bool_check("algebra-f-exact", "metric function f", q && *q == mpq_class(7, 17),
                                     "f(4) = " + f4.str()));
    sym::Interval enc = sym::eval_numeric(catalog::taub_nut_f(m, l, r),
                                          sym::RationalPoint{{Symbol::parameter("m"), 1}, {Symbol::parameter("l"), 1},
                                                             {Coords::r(), 4}},
                                          bits);
    out.push_back(report::bool_check("algebra-f-enclosure", "metric function f", enc.contains(mpq_class(7, 17)),
                                     enc.str(20)));
    sym::Interval s0 = sym::eval_numeric(sym::sin(Coords::theta()), sym::RationalPoint{{Coords::theta(), 0}}, bits);
    out.push_back(report::bool_check("algebra-sin-zero", "symbolic core", s0.contains(0) && s0.width() == 0, s0.str(20)));
    bool div = false;
    try {
      (void)(Expr(1) / (r - r));
    } catch (const DivisionByZero&) {
      div = true;
    }
    out.push_back(report::bool_check("algebra-division-by-zero", "symbolic core", div, "1/(r - r) raises DivisionByZero"));
    bool cap = false;
    try {
      Expr a(Symbol::function("A", Coords::r()));
      (void)sym::diff(sym::diff(sym::diff(a, Coords::r()), Coords::r()), Coords::r());
    } catch (const DerivativeOrderError&) {
      cap = true;
    }
    out.push_back(report::bool_check("algebra-derivative-cap", "symbolic core", cap, "A''' raises DerivativeOrderError"));
    Expr parsed = parse::parse_expr("(r^2 - 2*m*r - l^2)/(r^2 + l^2)");
    out.push_back(report::zero_check("algebra-parser", "metric function f", parsed - catalog::taub_nut_f(m, l, r), seed));
    return out;
  }});
  t.push_back({"algebra-properties", [seed] {
    auto all = property_checks(seed, 200);
    std::vector<Check> out;
    for (auto& c : all) {
      if (c.id == "property-ring-axioms" || c.id == "property-diff-commute" || c.id == "property-substitute-diff" ||
          c.id == "property-numeric-enclosure")
        out.push_back(c);
    }
    return out;
  }});
  return t;
}

// forms ---------------------------------------------------------------------

std::vector<Task> forms_tasks(std::uint64_t seed, const Params& p) {
  std::vector<Task> t;
  t.push_back({"forms-basics", [seed] {
    std::vector<Check> out;
    auto chart = forms::Chart::euler();
    auto fr = catalog::invariant_frame(chart);
    auto d = [&](Symbol s) { return DiffForm::differential(chart, s); };
    Expr sth = sym::sin(Coords::theta()), cth = sym::cos(Coords::theta());
    DiffForm dth_dph = forms::wedge(d(Coords::theta()), d(Coords::phi()));
    auto form_res = [](const std::string& label, const DiffForm& f) {
      std::vector<std::pair<std::string, Expr>> res;
      for (const auto& [mask, c] : f.terms()) res.emplace_back(label + "[" + std::to_string(mask) + "]", c);
      if (res.empty()) res.emplace_back(label, Expr(0));
      return res;
    };
    out.push_back(report::zero_check("forms-sigma-wedge", "invariant one-forms",
                                     form_res("sx^sy - sin dth^dph", forms::wedge(fr.sigma_x, fr.sigma_y) - sth * dth_dph), seed));
    out.push_back(report::zero_check("forms-antisymmetry", "exterior algebra",
                                     form_res("sx^sx", forms::wedge(fr.sigma_x, fr.sigma_x)), seed));
    DiffForm expect = forms::wedge(d(Coords::r()), d(Coords::psi())) + cth * forms::wedge(d(Coords::r()), d(Coords::phi()));
    out.push_back(report::zero_check("forms-bilinearity", "exterior algebra",
                                     form_res("dr^sz", forms::wedge(d(Coords::r()), fr.sigma_z) - expect), seed));
    std::vector<std::pair<std::string, Expr>> st;
    auto add = [&](const std::string& label, const DiffForm& f) {
      auto r = form_res(label, f);
      st.insert(st.end(), r.begin(), r.end());
    };
    add("d sz + sin dth^dph", forms::ext_d(fr.sigma_z) + sth * dth_dph);
    add("d sz + sx^sy", forms::ext_d(fr.sigma_z) + forms::wedge(fr.sigma_x, fr.sigma_y));
    add("d sx + sy^sz", forms::ext_d(fr.sigma_x) + forms::wedge(fr.sigma_y, fr.sigma_z));
    add("d sy + sz^sx", forms::ext_d(fr.sigma_y) + forms::wedge(fr.sigma_z, fr.sigma_x));
    out.push_back(report::zero_check("forms-structure-equations", "invariant one-forms", st, seed));
    out.push_back(report::zero_check("forms-dd-r", "exterior derivative", form_res("d dr", forms::ext_d(d(Coords::r()))), seed));

    auto dpsi = forms::VecField::partial(chart, Coords::psi());
    auto dtheta = forms::VecField::partial(chart, Coords::theta());
    auto dphi = forms::VecField::partial(chart, Coords::phi());
    std::vector<std::pair<std::string, Expr>> in;
    in.emplace_back("i_dpsi sz - 1", forms::interior(dpsi, fr.sigma_z).coeff(0) - Expr(1));
    st.clear();
    add("i_dtheta(sin dth^dph) - sin dph", forms::interior(dtheta, sth * dth_dph) - sth * d(Coords::phi()));
    in.insert(in.end(), st.begin(), st.end());
    in.emplace_back("i_dphi sx + sin cos(psi)",
                    forms::interior(dphi, fr.sigma_x).coeff(0) + sth * sym::cos(Coords::psi()));
    out.push_back(report::zero_check("forms-interior", "interior product", in, seed));

    st.clear();
    add("L sz", forms::lie_form(dpsi, fr.sigma_z));
    add("L sx - sy", forms::lie_form(dpsi, fr.sigma_x) - fr.sigma_y);
    add("L sy + sx", forms::lie_form(dpsi, fr.sigma_y) + fr.sigma_x);
    out.push_back(report::zero_check("forms-lie-dpsi", "right U(1) action", st, seed));

    out.push_back(forms::dual_structure_check({fr.sigma_z, fr.sigma_x, fr.sigma_y}, fr.constants,
                                              "forms-dual-structure", seed));
    forms::StructureConstants zero(3, std::vector<std::vector<Expr>>(3, std::vector<Expr>(3, Expr(0))));
    auto abelian = forms::dual_structure_check({d(Coords::psi()), d(Coords::theta()), d(Coords::phi())}, zero,
                                               "forms-dual-structure-abelian", seed);
    out.push_back(abelian);
    auto wrong = fr.constants;
    wrong[0][1][2] = -wrong[0][1][2];
    wrong[0][2][1] = -wrong[0][2][1];
    auto bad = forms::dual_structure_check({fr.sigma_z, fr.sigma_x, fr.sigma_y}, wrong, "wrong-sign", seed);
    out.push_back(report::bool_check("forms-dual-structure-negative-control", "structure constants",
                                     bad.status == Status::fail, bad.residual));
    return out;
  }});
  t.push_back({"forms-metric", [seed] {
    std::vector<Check> out;
    auto chart = forms::Chart::euler();
    auto fr = catalog::invariant_frame(chart);
    auto d = [&](Symbol s) { return DiffForm::differential(chart, s); };
    Expr sth = sym::sin(Coords::theta());
    auto sq = forms::square(fr.sigma_x) + forms::square(fr.sigma_y);
    auto round = forms::square(d(Coords::theta())) + sth * sth * forms::square(d(Coords::phi()));
    out.push_back(report::zero_check("forms-sphere-metric", "invariant one-forms", catalog::metric_difference(sq, round), seed));

    auto orbit = forms::Chart::orbit();
    auto ofr = catalog::invariant_frame(orbit);
    auto g1 = catalog::canonical_orbit_metric(1, Expr(1), Expr(1));
    auto sum = forms::square(ofr.sigma_z) + forms::square(ofr.sigma_x) + forms::square(ofr.sigma_y);
    out.push_back(report::zero_check("forms-orbit-round", "orbit metric", catalog::metric_difference(g1, sum), seed));
    const auto& v = reduction::vars();
    Expr a(v.A), b(v.B);
    std::vector<std::pair<std::string, Expr>> res;
    for (int eps : {1, -1}) {
      auto g = catalog::canonical_orbit_metric(eps, a, b);
      auto o = orbit->coords();
      auto dpsi = DiffForm::differential(orbit, o[0]);
      auto dth = DiffForm::differential(orbit, o[1]);
      auto dph = DiffForm::differential(orbit, o[2]);
      Expr ct = sym::cos(o[1]), st = sym::sin(o[1]);
      auto expanded = Expr(eps) * a * a * forms::square(dpsi + ct * dph) +
                      b * b * (forms::square(dth) + st * st * forms::square(dph));
      for (auto& [k, e] : catalog::metric_difference(g, expanded)) res.emplace_back(case_tag(eps) + k, e);
    }
    if (res.empty()) res.emplace_back("difference", Expr(0));
    out.push_back(report::zero_check("forms-orbit-expansion", "orbit metric", res, seed));

    // theta^0 ^ theta^1 for the spacelike tetrad
    auto tet = curv::formal_tetrad(1);
    auto w = forms::wedge(tet.theta(0), tet.theta(1));
    Expr r0(v.A), r1(v.B);
    auto want = r0 * r1 * forms::wedge(d(Coords::r()), fr.sigma_z);
    std::vector<std::pair<std::string, Expr>> wr;
    for (const auto& [mask, c] : (w - want).terms()) wr.emplace_back(std::to_string(mask), c);
    if (wr.empty()) wr.emplace_back("difference", Expr(0));
    out.push_back(report::zero_check("forms-tetrad-wedge", "tetrad", wr, seed));
    out.push_back(report::zero_check("forms-tetrad-theta2", "tetrad", tet.theta(2).component({2}) - Expr(v.R), seed));

    forms::Signature eta{-1, 1, 1, 1};
    auto u = [&](int i) { return DiffForm::unit(chart, i, forms::Basis::frame); };
    auto s01 = forms::hodge_frame(forms::wedge(u(0), u(1)), eta) + forms::wedge(u(2), u(3));
    auto s1 = forms::hodge_frame(DiffForm::scalar(chart, Expr(1), forms::Basis::frame), eta) -
              forms::wedge(forms::wedge(u(0), u(1)), forms::wedge(u(2), u(3)));
    std::vector<std::pair<std::string, Expr>> hs;
    for (const auto& [mask, c] : s01.terms()) hs.emplace_back("*(t0^t1) + t2^t3", c);
    for (const auto& [mask, c] : s1.terms()) hs.emplace_back("*1 - vol", c);
    if (hs.empty()) hs.emplace_back("difference", Expr(0));
    out.push_back(report::zero_check("forms-hodge-examples", "Hodge star", hs, seed));
    return out;
  }});
  t.push_back({"forms-catalog", [seed, p] {
    std::vector<Check> out;
    Expr m = param_or_symbol(p.m, "m"), l = param_or_symbol(p.l, "l");
    auto tn = catalog::taub_nut(m, l, p.n);
    auto dr = forms::VecField::partial(tn.chart, Coords::r());
    bool nonzero = !forms::lie_metric(dr, tn.metric).is_zero();
    out.push_back(report::bool_check("forms-killing-negative-control", "isometry generators", nonzero,
                                     "L_dr g is non-zero"));
    auto dphi = forms::VecField::partial(tn.chart, Coords::phi());
    std::vector<std::pair<std::string, Expr>> res;
    auto lg = forms::lie_metric(dphi, tn.metric);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) res.emplace_back("(" + std::to_string(i) + std::to_string(j) + ")", lg(i, j));
    out.push_back(report::zero_check("forms-lie-metric-dphi", "isometry generators", res, seed));
    bool domain = false;
    try {
      catalog::taub_nut(m, Expr(0));
    } catch (const ParameterDomain&) {
      domain = true;
    }
    out.push_back(report::bool_check("forms-nut-parameter-domain", "metric function f", domain, "l = 0 rejected"));
    std::string t1 = catalog::orbit_type(Expr(1), Expr(1), 0);
    std::string t2 = catalog::orbit_type(Expr(1), Expr(1), 3);
    std::string t3 = catalog::orbit_type(Expr(0), Expr(1), 1);
    out.push_back(report::bool_check("forms-orbit-type", "orbit types", t1 == "Taub" && t2 == "NUT" && t3 == "horizon",
                                     "r=0: " + t1 + ", r=3: " + t2 + ", m=0 r=1: " + t3));
    std::string expect = p.n == 1 ? "4*pi" : "4*pi/" + std::to_string(p.n);
    out.push_back(report::bool_check("forms-lens-period", "lens space", tn.psi_period == expect && tn.lens_index == p.n,
                                     "psi period " + tn.psi_period));
    return out;
  }});
  t.push_back({"forms-properties", [seed] {
    auto all = property_checks(seed, 200);
    std::vector<Check> out;
    for (auto& c : all) {
      if (c.id == "property-d-squared" || c.id == "property-cartan-formula" || c.id == "property-jacobi" ||
          c.id == "property-hodge-double-star" || c.id == "property-frame-round-trip" || c.id == "property-bianchi")
        out.push_back(c);
    }
    return out;
  }});
  return t;
}

// killing -------------------------------------------------------------------

catalog::SpacetimeModel model_from(const Params& p) {
  Expr m = param_or_symbol(p.m, "m"), l = param_or_symbol(p.l, "l");
  if (p.model == "extension") return catalog::extension(p.branch, m, l, p.n);
  return catalog::taub_nut(m, l, p.n);
}

std::vector<Task> killing_tasks(std::uint64_t seed, const Params& p) {
  catalog::SpacetimeModel model = model_from(p);
  return {{"killing", [model, seed] { return from_report(catalog::verify_killing(model, seed)); }}};
}

// curvature -----------------------------------------------------------------

std::vector<std::pair<std::string, Expr>> pipeline_residuals(const curv::Tetrad& tet) {
  auto bundle = curv::compute_bundle(tet);
  auto coord = curv::christoffel_curvature(tet.metric());
  auto fr = curv::to_frame(coord, tet);
  auto ge = curv::einstein_to_frame(coord, tet);
  std::vector<std::pair<std::string, Expr>> res;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d)
          res.emplace_back("R" + std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d),
                           fr[a][b][c][d] - bundle.riemann[a][b][c][d]);
      res.emplace_back("G" + std::to_string(a) + std::to_string(b), ge[a][b] - bundle.einstein[a][b]);
    }
  return res;
}

std::vector<Task> curvature_tasks(int eps, std::uint64_t seed) {
  std::string tag = case_tag(eps);
  std::vector<Task> t;
  t.push_back({tag + "-displays", [eps, seed] { return curv::display_checks(eps, seed); }});
  t.push_back({tag + "-pipelines", [eps, seed, tag] {
    return std::vector<Check>{report::zero_check(tag + "-pipeline-equivalence", "curvature pipelines",
                                                 pipeline_residuals(curv::formal_tetrad(eps)), seed)};
  }});
  t.push_back({tag + "-flat", [seed, tag] {
    auto chart = forms::Chart::euler();
    std::vector<DiffForm> th;
    for (int i = 0; i < 4; ++i) th.push_back(DiffForm::unit(chart, i));
    curv::Tetrad flat(th, {-1, 1, 1, 1});
    auto b = curv::compute_bundle(flat);
    std::vector<std::pair<std::string, Expr>> res;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) {
        for (const auto& [mask, e] : b.connection[a][c].terms()) res.emplace_back("omega" + std::to_string(a) + std::to_string(c), e);
        for (int x = 0; x < 4; ++x)
          for (int y = 0; y < 4; ++y) res.emplace_back("R", b.riemann[a][c][x][y]);
      }
    auto coord = curv::christoffel_curvature(flat.metric());
    std::vector<std::pair<std::string, Expr>> gam;
    for (const auto& plane : coord.christoffel)
      for (const auto& row : plane)
        for (const auto& e : row) gam.emplace_back("Gamma", e);
    return std::vector<Check>{report::zero_check(tag + "-flat-tetrad", "flat limit", res, seed),
                              report::zero_check(tag + "-minkowski-christoffel", "flat limit", gam, seed)};
  }});
  return t;
}

// extensions ----------------------------------------------------------------

curv::Tetrad extension_tetrad(const catalog::SpacetimeModel& ext, const Expr& m, const Expr& l) {
  auto chart = ext.chart;
  Expr r(Coords::r());
  Expr u = sym::sqrt_expr(r * r + l * l);
  Expr v = sym::sqrt_expr(r * r - Expr(2) * m * r - l * l);
  auto sz = catalog::invariant_frame(chart).sigma_z;
  auto dr = DiffForm::differential(chart, Coords::r());
  Expr sgn = ext.metric(0, 1) / (Expr(2) * l);
  auto th0 = Expr(2) * l * (v / u) * sz - sgn * (u / v) * dr;
  auto th1 = (u / v) * dr;
  auto th2 = u * DiffForm::differential(chart, Coords::theta());
  auto th3 = u * sym::sin(Coords::theta()) * DiffForm::differential(chart, Coords::phi());
  return curv::Tetrad({th0, th1, th2, th3}, {-1, 1, 1, 1});
}

std::vector<std::pair<std::string, Expr>> einstein_residuals(const std::vector<std::vector<Expr>>& g) {
  std::vector<std::pair<std::string, Expr>> res;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a; b < g.size(); ++b) res.emplace_back("G" + std::to_string(a) + std::to_string(b), g[a][b]);
  return res;
}

std::vector<std::pair<std::string, Expr>> einstein_residuals(const curv::Array2<Expr>& g) {
  std::vector<std::pair<std::string, Expr>> res;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b) res.emplace_back("G" + std::to_string(a) + std::to_string(b), g[a][b]);
  return res;
}

std::vector<Task> extension_tasks(std::uint64_t seed, const Params& p) {
  std::vector<Task> t;
  Expr m(Symbol::parameter("m")), l(Symbol::parameter("l"));
  t.push_back({"tn-vacuum", [m, l, seed] {
    auto tn = catalog::taub_nut(m, l);
    auto t0 = std::chrono::steady_clock::now();
    auto bundle = curv::compute_bundle(*tn.tetrad);
    auto coord = curv::christoffel_curvature(tn.metric);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::vector<Check>{
        report::zero_check("tn-vacuum-cartan", "vacuum field equations", einstein_residuals(bundle.einstein), seed),
        report::zero_check("tn-vacuum-christoffel", "vacuum field equations", einstein_residuals(coord.einstein), seed),
        report::bool_check("tn-vacuum-time", "vacuum field equations", secs < 60.0, "both pipelines under 60 s")};
  }});
  t.push_back({"tn-pipelines", [m, l, seed] {
    auto tn = catalog::taub_nut(m, l);
    return std::vector<Check>{
        report::zero_check("tn-pipeline-equivalence", "curvature pipelines", pipeline_residuals(*tn.tetrad), seed)};
  }});
  mpq_class mq = p.m.value_or(1), lq = p.l.value_or(1);
  if (lq == 0) throw BadParams("l must be non-zero");
  for (Branch br : {Branch::psi_prime, Branch::psi_double_prime}) {
    std::string tag = br == Branch::psi_prime ? "ext-psi-prime" : "ext-psi-double-prime";
    t.push_back({tag + "-symbolic", [=] {
      std::vector<Check> out;
      auto ext = catalog::extension(br, m, l);
      auto coord = curv::christoffel_curvature(ext.metric);
      out.push_back(report::zero_check(tag + "-einstein", "horizon-regular extension", einstein_residuals(coord.einstein), seed));
      Expr r(Coords::r());
      Expr want = Expr(-4) * l * l * (r * r + l * l).pow(2) * sym::sin(Coords::theta()).pow(2);
      out.push_back(report::zero_check(tag + "-determinant", "horizon-regular extension", ext.metric.det() - want, seed));
      auto pulled = catalog::pull_back_extension(ext, br, m, l);
      auto tn = catalog::taub_nut(m, l);
      auto diff = catalog::metric_difference(pulled, tn.metric);
      if (diff.empty()) diff.emplace_back("difference", Expr(0));
      out.push_back(report::zero_check(tag + "-pullback", "horizon-regular extension", diff, seed));
      return out;
    }});
    t.push_back({tag + "-pipelines", [=] {
      auto ext = catalog::extension(br, m, l);
      auto tet = extension_tetrad(ext, m, l);
      auto diff = catalog::metric_difference(tet.metric(), ext.metric);
      if (diff.empty()) diff.emplace_back("difference", Expr(0));
      return std::vector<Check>{report::zero_check(tag + "-tetrad-metric", "horizon-regular extension", diff, seed),
                                report::zero_check(tag + "-pipeline-equivalence", "curvature pipelines",
                                                   pipeline_residuals(tet), seed)};
    }});
    t.push_back({tag + "-spot-check", [=] {
      auto ext = catalog::extension(br, Expr(mq), Expr(lq));
      mpfr_prec_t bits = sym::default_precision();
      sym::Interval root = sym::Interval(mq * mq + lq * lq, bits).sqrt();
      sym::Interval mi(mq, bits), one(mpq_class(1), bits);
      std::vector<Check> out;
      for (int sign : {1, -1}) {
        sym::Interval rh = sign == 1 ? mi + root : mi - root;
        sym::NumericPoint pt{{Coords::r(), rh}, {ext.chart->coord(1), one}, {Coords::theta(), one}, {Coords::phi(), one}};
        auto g = curv::numeric_einstein(ext.metric, pt, bits);
        double worst = curv::max_magnitude(g);
        char buf[64];
        std::snprintf(buf, sizeof buf, "max |G| <= %.3g", worst);
        out.push_back(report::bool_check(tag + (sign == 1 ? "-spot-check-r-plus" : "-spot-check-r-minus"),
                                         "horizon-regular extension", worst < 1e-20, buf));
      }
      return out;
    }});
  }
  return t;
}

// reduction, charges, kretschmann ---------------------------------------------

std::vector<Task> reduction_tasks(std::uint64_t seed, const Params& p) {
  std::vector<Task> t;
  t.push_back({"d-solution", [seed] { return from_report(reduction::verify_D_solution(seed)); }});
  for (int eps : cases(p)) {
    auto c = reduction::make_case(eps);
    t.push_back({"f-" + case_tag(eps), [c, seed] { return from_report(reduction::verify_F_solution(c, seed)); }});
    t.push_back({"constant-R-" + case_tag(eps), [c, seed] { return from_report(reduction::constant_R_contradiction(c, seed)); }});
    t.push_back({"transform-" + case_tag(eps), [c, seed] { return from_report(reduction::verify_transform(c, seed)); }});
    t.push_back({"on-shell-" + case_tag(eps), [c, seed] { return from_report(reduction::verify_on_shell(c, seed)); }});
  }
  if (p.c0 || p.c1) {
    mpq_class c0 = p.c0.value_or(1), c1 = p.c1.value_or(8);
    if (c0 <= 0) throw BadParams("c0 must be positive");
    for (int eps : cases(p)) {
      t.push_back({"instance-" + case_tag(eps), [=] {
        const auto& v = reduction::vars();
        auto sol = reduction::closed_form(reduction::make_case(eps));
        sym::Bindings b{{v.c0, Expr(c0)}, {v.c1, Expr(c1)}};
        Expr f = sym::substitute(sol.F, b);
        std::string tag = "instance-" + case_tag(eps);
        Expr m = sym::substitute(sol.m, b), l2 = sym::substitute(sol.l2, b);
        mpq_class want_m = eps * c1 / (8 * c0);
        auto mv = m.rational_value();
        auto lv = l2.rational_value();
        return std::vector<Check>{
            report::zero_check(tag + "-f-ode", "F closed form", sym::substitute(reduction::f_ode(eps, f), b), seed),
            report::bool_check(tag + "-parameter-map", "r' chart metric", mv && lv && *mv == want_m && *lv == c0,
                               "m = " + m.str() + ", l^2 = " + l2.str())};
      }});
    }
  }
  return t;
}

std::vector<Task> charges_tasks(std::uint64_t seed, const Params& p) {
  std::vector<Task> t;
  t.push_back({"charges", [seed] { return from_report(charges::charges_report(seed)); }});
  if (p.m || p.l) {
    mpq_class mq = p.m.value_or(1), lq = p.l.value_or(1);
    if (lq == 0) throw BadParams("l must be non-zero");
    t.push_back({"charges-instance", [=] {
      auto tn = catalog::taub_nut(Expr(mq), Expr(lq), p.n);
      auto k = charges::komar_field(tn);
      auto km = charges::komar_mass(tn, k);
      auto dc = charges::dual_charge(tn, k);
      return std::vector<Check>{
          report::zero_check("charges-instance-komar", "Komar mass", km.limit + Expr(mq), seed),
          report::zero_check("charges-instance-dual", "dual charge", dc.limit - Expr(lq), seed)};
    }});
  }
  return t;
}

std::vector<Check> kretschmann_example(int eps, const mpq_class& c0, const mpq_class& c1, const mpq_class& r,
                                       const std::string& id, std::uint64_t seed) {
  const auto& v = reduction::vars();
  auto sol = reduction::closed_form(reduction::make_case(eps));
  auto full = curv::substitute(curv::compute_bundle(curv::formal_tetrad(eps)), reduction::on_shell(sol)).kretschmann;
  Expr closed = reduction::kretschmann_closed_form(sol);
  sym::RationalPoint pt{{v.r, r}, {v.c0, c0}, {v.c1, c1}};
  mpfr_prec_t bits = sym::default_precision();
  sym::Interval a = sym::eval_numeric(closed, pt, bits);
  sym::Interval b = sym::eval_numeric(full, pt, bits);
  (void)seed;
  return {report::bool_check(id, "Kretschmann scalar", a.overlaps(b), "closed " + a.str(20) + " vs contraction " + b.str(20))};
}

std::vector<Task> kretschmann_tasks(std::uint64_t seed, const Params& p) {
  std::vector<Task> t;
  t.push_back({"kretschmann", [seed] { return from_report(reduction::kretschmann_report(seed)); }});
  t.push_back({"kretschmann-examples", [seed] {
    auto a = kretschmann_example(1, 1, 8, 2, "kretschmann-example-c1-8", seed);
    auto b = kretschmann_example(1, 1, 0, 2, "kretschmann-example-c1-0", seed);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }});
  if (p.c0 || p.c1) {
    mpq_class c0 = p.c0.value_or(1), c1 = p.c1.value_or(8);
    if (c0 <= 0) throw BadParams("c0 must be positive");
    // a rational radius beyond sqrt(c0)
    mpz_class root;
    mpz_class floor_c0 = c0.get_num() / c0.get_den();
    mpz_sqrt(root.get_mpz_t(), floor_c0.get_mpz_t());
    mpq_class r(root + 2);
    for (int eps : cases(p)) {
      t.push_back({"kretschmann-instance-" + case_tag(eps), [=] {
        return kretschmann_example(eps, c0, c1, r, "kretschmann-instance-" + case_tag(eps), seed);
      }});
    }
  }
  return t;
}

std::vector<Task> tasks_for(const std::string& name, const Params& p, std::uint64_t seed) {
  if (name == "algebra") return algebra_tasks(seed);
  if (name == "forms") return forms_tasks(seed, p);
  if (name == "killing") return killing_tasks(seed, p);
  if (name == "curvature-spacelike") return curvature_tasks(1, seed);
  if (name == "curvature-timelike") return curvature_tasks(-1, seed);
  if (name == "extensions") return extension_tasks(seed, p);
  if (name == "reduction") return reduction_tasks(seed, p);
  if (name == "charges") return charges_tasks(seed, p);
  if (name == "kretschmann") return kretschmann_tasks(seed, p);
  if (name == "all") {
    std::vector<Task> all;
    for (const auto& s : suite_names()) {
      if (s == "all") continue;
      auto part = tasks_for(s, p, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw UnknownSuite("unknown suite '" + name + "'");
}

}  // namespace

report::Report run_suite(const std::string& name, const Params& params, std::uint64_t seed) {
  if (params.n < 1) throw BadParams("lens index n must be a positive integer");
  if (params.l && *params.l == 0) throw BadParams("l must be non-zero");
  if (params.c0 && *params.c0 <= 0) throw BadParams("c0 must be positive");
  if (params.eps && *params.eps != 1 && *params.eps != -1) throw BadParams("case must be spacelike or timelike");
  auto tasks = tasks_for(name, params, seed);
  warm_up();
  report::Report rep;
  rep.suite = name;
  rep.engine_version = report::engine_version();
  rep.seed = seed;
  rep.checks = run_tasks(std::move(tasks), params.timings);
  return rep;
}

}  // namespace tnv::cli
