#include "tnv/catalog/catalog.hpp"

#include "tnv/errors.hpp"
#include "tnv/forms/calculus.hpp"

namespace tnv::catalog {

using forms::Coords;
using sym::cos;
using sym::sin;

namespace {

struct Angles {
  Symbol psi, theta, phi;
};

// psi, theta, phi are the last three coordinates of every chart used here
Angles angles(const ChartPtr& chart) {
  std::size_t n = chart->dim();
  if (n < 3) throw Error("chart has no Euler angles");
  return {chart->coord(n - 3), chart->coord(n - 2), chart->coord(n - 1)};
}

DiffForm one_form(const ChartPtr& chart, const std::map<Symbol, Expr>& coeffs) {
  DiffForm f(chart, 1);
  for (const auto& [s, c] : coeffs) {
    int i = chart->index_of(s);
    if (i < 0) throw Error("'" + s.name() + "' is not on the chart");
    f.add(1u << i, c);
  }
  return f;
}

VecField field(const ChartPtr& chart, const std::map<Symbol, Expr>& coeffs) {
  std::vector<Expr> c(chart->dim());
  for (const auto& [s, e] : coeffs) c[static_cast<std::size_t>(chart->index_of(s))] = e;
  return VecField(chart, std::move(c));
}

DiffForm sigma_z(const ChartPtr& chart) {
  Angles a = angles(chart);
  return one_form(chart, {{a.psi, Expr(1)}, {a.phi, cos(a.theta)}});
}

std::map<std::string, std::string> periods_for(int n) {
  return {{"psi", n == 1 ? "4*pi" : "4*pi/" + std::to_string(n)}};
}

void check_lens(int n) {
  if (n < 1) throw ParameterDomain("lens index n must be a positive integer");
}

}  // namespace

InvariantFrame invariant_frame(const ChartPtr& chart) {
  Angles a = angles(chart);
  InvariantFrame f{one_form(chart, {{a.theta, sin(a.psi)}, {a.phi, -(sin(a.theta) * cos(a.psi))}}),
                   one_form(chart, {{a.theta, cos(a.psi)}, {a.phi, sin(a.theta) * sin(a.psi)}}), sigma_z(chart),
                   {VecField::zero(chart), VecField::zero(chart), VecField::zero(chart)},
                   {}};
  // rows: sigma_z, sigma_x, sigma_y over columns psi, theta, phi
  const DiffForm* rows[3] = {&f.sigma_z, &f.sigma_x, &f.sigma_y};
  Symbol cols[3] = {a.psi, a.theta, a.phi};
  std::vector<std::vector<Expr>> m(3, std::vector<Expr>(3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = rows[i]->coeff(1u << chart->index_of(cols[j]));
  }
  auto inv = forms::matrix_inverse(m);
  for (std::size_t k = 0; k < 3; ++k) {
    f.duals[k] = field(chart, {{a.psi, inv[0][k]}, {a.theta, inv[1][k]}, {a.phi, inv[2][k]}});
  }
  f.constants.assign(3, std::vector<std::vector<Expr>>(3, std::vector<Expr>(3)));
  auto set = [&](std::size_t k, std::size_t i, std::size_t j) {
    f.constants[k][i][j] = Expr(1);
    f.constants[k][j][i] = Expr(-1);
  };
  set(0, 1, 2);  // [e2', e3'] = e1'
  set(1, 2, 0);  // [e3', e1'] = e2'
  set(2, 0, 1);  // [e1', e2'] = e3'
  return f;
}

std::array<VecField, 4> killing_fields(const ChartPtr& chart) {
  Angles a = angles(chart);
  Expr s = sin(a.theta);
  Expr c = cos(a.theta);
  Expr cot = c / s;
  Expr csc = s.inverse();
  Expr sp = sin(a.phi);
  Expr cp = cos(a.phi);
  return {field(chart, {{a.psi, Expr(1)}}),
          field(chart, {{a.theta, -sp}, {a.phi, -(cot * cp)}, {a.psi, csc * cp}}),
          field(chart, {{a.theta, cp}, {a.phi, -(cot * sp)}, {a.psi, csc * sp}}),
          field(chart, {{a.phi, Expr(1)}})};
}

Expr taub_nut_f(const Expr& m, const Expr& l, const Expr& r) {
  return (r * r - Expr(2) * m * r - l * l) / (r * r + l * l);
}

std::pair<Expr, Expr> horizons(const Expr& m, const Expr& l) {
  Expr root = sym::sqrt_expr(m * m + l * l);
  return {m + root, m - root};
}

SpacetimeModel taub_nut(const Expr& m, const Expr& l, int n) {
  if (l.is_zero()) throw ParameterDomain("NUT parameter l must be non-zero");
  check_lens(n);
  ChartPtr chart = forms::Chart::euler();
  Expr r(Coords::r());
  Expr f = taub_nut_f(m, l, r);
  DiffForm sz = sigma_z(chart);
  DiffForm dr = DiffForm::differential(chart, Coords::r());
  DiffForm dth = DiffForm::differential(chart, Coords::theta());
  DiffForm dph = DiffForm::differential(chart, Coords::phi());

  // sqrt f = v/u with independent radicals u, v
  Expr u = sym::sqrt_expr(r * r + l * l);
  Expr v = sym::sqrt_expr(r * r - Expr(2) * m * r - l * l);
  std::vector<DiffForm> th{Expr(2) * l * v / u * sz, u / v * dr, u * dth, u * sin(Coords::theta()) * dph};
  curv::Tetrad tetrad(th, {-1, 1, 1, 1});

  SymTensor2 g = Expr(-4) * l * l * f * forms::square(sz) + f.inverse() * forms::square(dr) +
                 (r * r + l * l) * (forms::square(dth) + sin(Coords::theta()).pow(2) * forms::square(dph));
  auto ks = killing_fields(chart);
  SpacetimeModel model{"taub-nut", chart, g, tetrad, {{"m", m}, {"l", l}}, {ks.begin(), ks.end()},
                       periods_for(n).at("psi"), n};
  return model;
}

SpacetimeModel generalized_family(int eps, const Expr& a, const Expr& b, const Expr& r_fn) {
  if (eps != 1 && eps != -1) throw UnknownCase("eps must be +1 or -1");
  ChartPtr chart = forms::Chart::euler();
  DiffForm sz = sigma_z(chart);
  DiffForm adr = a * DiffForm::differential(chart, Coords::r());
  DiffForm bsz = b * sz;
  DiffForm t2 = r_fn * DiffForm::differential(chart, Coords::theta());
  DiffForm t3 = r_fn * sin(Coords::theta()) * DiffForm::differential(chart, Coords::phi());
  std::vector<DiffForm> th = eps == 1 ? std::vector<DiffForm>{adr, bsz, t2, t3} : std::vector<DiffForm>{bsz, adr, t2, t3};
  curv::Tetrad tetrad(th, {-1, 1, 1, 1});
  auto ks = killing_fields(chart);
  return SpacetimeModel{eps == 1 ? "generalized-spacelike" : "generalized-timelike",
                        chart,
                        tetrad.metric(),
                        tetrad,
                        {{"eps", Expr(eps)}},
                        {ks.begin(), ks.end()},
                        "4*pi/n",
                        1};
}

ChartPtr extension_chart(Branch branch) {
  static const ChartPtr prime = std::make_shared<const forms::Chart>(
      std::vector<Symbol>{Coords::r(), Symbol::coordinate("psip"), Coords::theta(), Coords::phi()});
  static const ChartPtr double_prime = std::make_shared<const forms::Chart>(
      std::vector<Symbol>{Coords::r(), Symbol::coordinate("psipp"), Coords::theta(), Coords::phi()});
  return branch == Branch::psi_prime ? prime : double_prime;
}

SpacetimeModel extension(Branch branch, const Expr& m, const Expr& l, int n) {
  if (l.is_zero()) throw ParameterDomain("NUT parameter l must be non-zero");
  check_lens(n);
  ChartPtr chart = extension_chart(branch);
  Expr r(Coords::r());
  Expr f = taub_nut_f(m, l, r);
  DiffForm sz = sigma_z(chart);
  DiffForm dr = DiffForm::differential(chart, Coords::r());
  DiffForm dth = DiffForm::differential(chart, Coords::theta());
  DiffForm dph = DiffForm::differential(chart, Coords::phi());
  Expr cross = Expr(branch == Branch::psi_prime ? 4 : -4) * l;  // 2(2l), as a symmetrised product
  SymTensor2 g = Expr(-4) * l * l * f * forms::square(sz) + cross * forms::sym_product(sz, dr) +
                 (r * r + l * l) * (forms::square(dth) + sin(Coords::theta()).pow(2) * forms::square(dph));
  auto ks = killing_fields(chart);
  return SpacetimeModel{branch == Branch::psi_prime ? "extension-psi-prime" : "extension-psi-double-prime",
                        chart,
                        g,
                        std::nullopt,
                        {{"m", m}, {"l", l}},
                        {ks.begin(), ks.end()},
                        periods_for(n).at("psi"),
                        n};
}

SymTensor2 canonical_orbit_metric(int eps, const Expr& a, const Expr& b) {
  if (eps != 1 && eps != -1) throw UnknownCase("eps must be +1 or -1");
  ChartPtr chart = forms::Chart::orbit();
  InvariantFrame f = invariant_frame(chart);
  return Expr(eps) * a * a * forms::square(f.sigma_z) +
         b * b * (forms::square(f.sigma_x) + forms::square(f.sigma_y));
}

report::Report verify_killing(const SpacetimeModel& model, std::uint64_t seed) {
  report::Report rep;
  rep.suite = "killing";
  rep.seed = seed;
  rep.engine_version = report::engine_version();
  auto ks = killing_fields(model.chart);
  for (std::size_t i = 0; i < 4; ++i) {
    SymTensor2 lg = forms::lie_metric(ks[i], model.metric);
    std::vector<std::pair<std::string, Expr>> res;
    for (std::size_t a = 0; a < lg.dim(); ++a) {
      for (std::size_t b = a; b < lg.dim(); ++b) res.emplace_back("(" + std::to_string(a) + std::to_string(b) + ")", lg(a, b));
    }
    rep.checks.push_back(report::zero_check("killing-xi" + std::to_string(i), "isometry generators", res, seed));
  }
  std::vector<std::pair<std::string, Expr>> comm;
  auto add_field = [&](const std::string& label, const VecField& v) {
    for (std::size_t k = 0; k < v.comps().size(); ++k) comm.emplace_back(label + "[" + std::to_string(k) + "]", v[k]);
  };
  add_field("[xi1,xi2]+xi3", forms::lie_vec(ks[1], ks[2]) + ks[3]);
  add_field("[xi2,xi3]+xi1", forms::lie_vec(ks[2], ks[3]) + ks[1]);
  add_field("[xi3,xi1]+xi2", forms::lie_vec(ks[3], ks[1]) + ks[2]);
  rep.checks.push_back(report::zero_check("commutators-su2", "Killing algebra", comm, seed));
  comm.clear();
  for (std::size_t i = 1; i < 4; ++i) add_field("[xi0,xi" + std::to_string(i) + "]", forms::lie_vec(ks[0], ks[i]));
  rep.checks.push_back(report::zero_check("commutators-u1", "Killing algebra", comm, seed));
  return rep;
}

SymTensor2 pull_back_extension(const SpacetimeModel& ext, Branch branch, const Expr& m, const Expr& l) {
  ChartPtr euler = forms::Chart::euler();
  Expr r(Coords::r());
  Expr h = (Expr(2) * l * taub_nut_f(m, l, r)).inverse();
  if (branch == Branch::psi_double_prime) h = -h;
  // J[i][j] = d x'^i / d x^j
  std::vector<std::vector<Expr>> jac(4, std::vector<Expr>(4));
  for (std::size_t i = 0; i < 4; ++i) jac[i][i] = Expr(1);
  jac[1][0] = h;
  sym::Bindings rename{{ext.chart->coord(1), Expr(Coords::psi())}};
  SymTensor2 g(euler);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = j; k < 4; ++k) {
      Expr v;
      for (std::size_t i = 0; i < 4; ++i) {
        if (jac[i][j].is_zero()) continue;
        for (std::size_t q = 0; q < 4; ++q) {
          if (jac[q][k].is_zero()) continue;
          v += jac[i][j] * jac[q][k] * ext.metric(i, q);
        }
      }
      g.set(j, k, sym::substitute(v, rename));
    }
  }
  return g;
}

std::string orbit_type(const Expr& m, const Expr& l, const mpq_class& r) {
  Expr f = taub_nut_f(m, l, Expr(r));
  auto q = f.rational_value();
  if (!q) throw BadParams("orbit type needs numeric m and l");
  int s = sgn(*q);
  return s == 0 ? "horizon" : (s < 0 ? "Taub" : "NUT");
}

std::vector<std::pair<std::string, Expr>> metric_difference(const SymTensor2& a, const SymTensor2& b) {
  if (a.dim() != b.dim()) throw Error("metrics of different dimension");
  std::vector<std::pair<std::string, Expr>> out;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) {
      out.emplace_back("g" + std::to_string(i) + std::to_string(j), a(i, j) - b(i, j));
    }
  }
  return out;
}

}  // namespace tnv::catalog
