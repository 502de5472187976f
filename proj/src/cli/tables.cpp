#include <algorithm>
#include <cstdio>
#include <sstream>

#include <mpfr.h>

#include "tnv/charges/charges.hpp"
#include "tnv/cli/suites.hpp"
#include "tnv/curv/displays.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/chart.hpp"
#include "tnv/reduction/reduction.hpp"
#include "tnv/sym/numeric.hpp"

namespace tnv::cli {

using forms::Coords;
using report::Check;
using report::Status;
using sym::Expr;
using sym::Symbol;

Range parse_range(const std::string& text) {
  auto a = text.find(':');
  auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw BadParams("range must be from:to:step");
  Range r{parse_rational(text.substr(0, a)), parse_rational(text.substr(a + 1, b - a - 1)),
          parse_rational(text.substr(b + 1))};
  if (r.step <= 0 || r.from > r.to) throw BadParams("range needs step > 0 and from <= to");
  return r;
}

std::optional<Range> default_range(const std::string& quantity) {
  if (quantity == "f") return Range{-3, 5, mpq_class(1, 2)};
  if (quantity == "K") return Range{-2, 2, mpq_class(1, 4)};
  return std::nullopt;  // charge-convergence: 10^3 .. 10^6
}

namespace {

std::string decimal(const sym::Interval& v, int digits = 20) {
  mpfr_t mid;
  mpfr_init2(mid, v.precision());
  mpfr_add(mid, v.lo(), v.hi(), MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  if (mpfr_zero_p(mid)) mpfr_set_zero(mid, 1);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, mid);
  std::string s(buf);
  mpfr_free_str(buf);
  mpfr_clear(mid);
  return s;
}

std::string decimal(const mpq_class& q) {
  return decimal(sym::Interval(q, 256), 15);
}

std::string decimal(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::vector<mpq_class> samples(const Range& r) {
  std::vector<mpq_class> out;
  for (mpq_class x = r.from; x <= r.to; x += r.step) out.push_back(x);
  return out;
}

sym::Interval eval_row(const Expr& e, const sym::RationalPoint& pt, const mpq_class& r) {
  try {
    return sym::eval_numeric(e, pt, sym::default_precision());
  } catch (const DomainError& err) {
    throw DomainError("row r = " + r.get_str() + ": " + err.what());
  }
}

}  // namespace

std::string emit_table(const std::string& quantity, const Params& params, const std::optional<Range>& range) {
  mpq_class m = params.m.value_or(1), l = params.l.value_or(1);
  if (l == 0) throw BadParams("l must be non-zero");
  std::ostringstream os;
  Symbol r = Coords::r();
  if (quantity == "f" || quantity == "K") {
    Range rg = range ? *range : *default_range(quantity);
    Expr value;
    if (quantity == "f") {
      value = catalog::taub_nut_f(Expr(m), Expr(l), Expr(r));
      os << "r,f,orbit\n";
    } else {
      auto tn = catalog::taub_nut(Expr(m), Expr(l), params.n);
      value = curv::compute_bundle(*tn.tetrad).kretschmann;
      os << "r,K\n";
    }
    for (const auto& x : samples(rg)) {
      sym::Interval v = eval_row(value, {{r, x}}, x);
      os << decimal(x) << ',' << decimal(v);
      if (quantity == "f") os << ',' << catalog::orbit_type(Expr(m), Expr(l), x);
      os << '\n';
    }
    return os.str();
  }
  if (quantity == "charge-convergence") {
    auto tn = catalog::taub_nut(Expr(m), Expr(l), params.n);
    auto k = charges::komar_field(tn);
    auto km = charges::komar_mass(tn, k);
    auto dc = charges::dual_charge(tn, k);
    std::vector<mpq_class> radii;
    if (range) {
      radii = samples(*range);
    } else {
      radii = charges::default_radii();
    }
    for (const auto& x : radii) {
      if (x <= 0) throw BadParams("charge radii must be positive");
    }
    auto kt = charges::convergence_table(km.value, km.limit, {}, radii);
    auto dt = charges::convergence_table(dc.value, dc.limit, {}, radii);
    os << "r,komar,komar_error,dual,dual_error\n";
    for (std::size_t i = 0; i < kt.size(); ++i) {
      os << decimal(kt[i].r) << ',' << decimal(kt[i].value) << ',' << decimal(kt[i].error) << ','
         << decimal(dt[i].value) << ',' << decimal(dt[i].error) << '\n';
    }
    return os.str();
  }
  throw BadParams("unknown table '" + quantity + "' (f, K, charge-convergence)");
}

report::Report cross_reference(std::uint64_t seed) {
  report::Report rep;
  rep.suite = "xref";
  rep.engine_version = report::engine_version();
  rep.seed = seed;
  const auto& v = reduction::vars();
  Expr A(v.A), B(v.B), R(v.R);

  // generalized line element against the two case tetrads
  {
    std::vector<std::pair<std::string, Expr>> res;
    auto chart = forms::Chart::euler();
    auto sz = catalog::invariant_frame(chart).sigma_z;
    auto dr = forms::DiffForm::differential(chart, Coords::r());
    auto dth = forms::DiffForm::differential(chart, Coords::theta());
    auto dph = forms::DiffForm::differential(chart, Coords::phi());
    for (int eps : {1, -1}) {
      auto shown = Expr(-eps) * A * A * forms::square(dr) + Expr(eps) * B * B * forms::square(sz) +
                   R * R * (forms::square(dth) + sym::sin(Coords::theta()).pow(2) * forms::square(dph));
      for (auto& [k, e] : catalog::metric_difference(shown, curv::formal_tetrad(eps).metric()))
        res.emplace_back((eps == 1 ? "spacelike " : "timelike ") + k, e);
    }
    if (res.empty()) res.emplace_back("difference", Expr(0));
    rep.checks.push_back(report::display_check("xref-generalized-line-element", "generalized family", res, seed));
  }

  // curvature two-forms, both cases
  for (int eps : {1, -1}) {
    for (auto& c : curv::display_checks(eps, seed)) {
      if (c.id.ends_with("-curvature-forms") || c.id.ends_with("-connection") || c.id.ends_with("-riemann")) {
        c.id = "xref-" + c.id;
        rep.checks.push_back(c);
      }
    }
  }

  // Kretschmann: the intermediate sum and the long closed form
  {
    auto kr = reduction::kretschmann_report(seed);
    for (auto& c : kr.checks) {
      if (c.id == "kretschmann-listed-terms" || c.id == "kretschmann-display" || c.id == "kretschmann-expansion") {
        c.id = "xref-" + c.id;
        rep.checks.push_back(c);
      }
    }
    // the listed sum repeats (R^0_231)^2 where (R^0_312)^2 belongs; record the
    // label and whether the two squares coincide on the formal tetrads
    std::vector<std::pair<std::string, Expr>> res;
    for (int eps : {1, -1}) {
      auto b = curv::compute_bundle(curv::formal_tetrad(eps));
      res.emplace_back(eps == 1 ? "spacelike" : "timelike", b.riemann[0][2][3][1].pow(2) - b.riemann[0][3][1][2].pow(2));
    }
    bool equal = true;
    for (const auto& [k, e] : res) equal = equal && sym::is_zero(e, seed);
    Check c;
    c.id = "xref-kretschmann-duplicated-label";
    c.anchor = "Kretschmann scalar";
    c.status = equal ? Status::mismatch_reported : Status::fail;
    c.residual = equal ? "second -8(R^0_231)^2 should read -8(R^0_312)^2; the squares agree, so the sum is unaffected"
                       : "the squares of R^0_231 and R^0_312 differ";
    rep.checks.push_back(c);
  }

  // dr'^2 coefficient printed with r in place of r'
  {
    Expr rp(Coords::r());
    Expr m(Symbol::parameter("m")), l(Symbol::parameter("l"));
    Expr r_old = sym::sqrt_expr(rp * rp + l * l);
    Expr intended = (rp * rp + l * l) / (rp * rp - Expr(2) * m * rp - l * l);
    Expr literal = (rp * rp + l * l) / (rp * rp - Expr(2) * m * r_old - l * l);
    rep.checks.push_back(report::display_check("xref-r-prime-coefficient", "r' chart metric", literal - intended, seed));
    auto tr = reduction::verify_transform(reduction::make_case(1), seed);
    for (auto& c : tr.checks) {
      if (c.id == "transform-metric-spacelike") {
        c.id = "xref-transform-metric";
        rep.checks.push_back(c);
      }
    }
  }

  // constant R, timelike: the inconsistency is B^2 < 0
  {
    auto cr = reduction::constant_R_contradiction(reduction::make_case(-1), seed);
    for (auto& c : cr.checks) {
      if (c.id == "constant-R-B2-timelike" || c.id == "constant-R-inconsistent-timelike") {
        c.id = "xref-" + c.id;
        rep.checks.push_back(c);
      }
    }
  }

  // charges
  {
    auto ch = charges::charges_report(seed);
    for (auto& c : ch.checks) {
      if (c.id == "charges-komar-limit" || c.id == "charges-dual-limit") {
        c.id = "xref-" + c.id;
        rep.checks.push_back(c);
      }
    }
  }
  std::stable_sort(rep.checks.begin(), rep.checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  return rep;
}

}  // namespace tnv::cli
