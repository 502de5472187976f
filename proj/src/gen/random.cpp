#include "tnv/gen/random.hpp"

#include "tnv/forms/chart.hpp"

namespace tnv::gen {

using forms::Coords;
using sym::Symbol;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

mpq_class rational(Rng& rng, int lo, int hi, int max_den) {
  mpq_class q(uniform(rng, lo * max_den, hi * max_den), uniform(rng, 1, max_den));
  q.canonicalize();
  return q;
}

const std::vector<Expr>& atoms() {
  static const std::vector<Expr> a = [] {
    Expr r(Coords::r());
    return std::vector<Expr>{r,
                             Expr(Symbol::parameter("m")),
                             Expr(Symbol::parameter("l")),
                             Expr(Symbol::function("A", Coords::r())),
                             sym::sin(Coords::theta()),
                             sym::cos(Coords::theta()),
                             sym::cos(Coords::psi()),
                             sym::sqrt_expr(r * r + Expr(1))};
  }();
  return a;
}

Expr random_monomial(Rng& rng) {
  const auto& a = atoms();
  int c = uniform(rng, 1, 5) * (uniform(rng, 0, 1) == 0 ? 1 : -1);
  Expr e(c);
  int k = uniform(rng, 1, 3);
  for (int i = 0; i < k; ++i) e *= a[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(a.size()) - 1))];
  return e;
}

Expr random_poly(Rng& rng, int terms, int max_degree) {
  const auto& a = atoms();
  Expr out(0);
  for (int t = 0; t < terms; ++t) {
    Expr term(uniform(rng, -4, 4));
    int deg = uniform(rng, 0, max_degree);
    for (int i = 0; i < deg; ++i) term *= a[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(a.size()) - 1))];
    out += term;
  }
  return out;
}

Expr random_expr(Rng& rng) {
  Expr p = random_poly(rng);
  if (uniform(rng, 0, 2) == 0) return p;
  const auto& a = atoms();
  // 1 + r^2 + x^2 stays positive for real x
  Expr x = a[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(a.size()) - 1))];
  Expr r(Coords::r());
  return p / (Expr(1) + r * r + x * x);
}

std::string random_text(Rng& rng, int depth) {
  static const char* leaves[] = {"r", "m", "l", "sin(theta)", "cos(psi)", "sqrt(r^2 + 1)"};
  if (depth <= 0 || uniform(rng, 0, 3) == 0) {
    if (uniform(rng, 0, 2) == 0) return std::to_string(uniform(rng, -5, 5));
    return leaves[uniform(rng, 0, 5)];
  }
  std::string a = random_text(rng, depth - 1);
  std::string b = random_text(rng, depth - 1);
  switch (uniform(rng, 0, 4)) {
    case 0:
      return "(" + a + " + " + b + ")";
    case 1:
      return "(" + a + " - " + b + ")";
    case 2:
      return "(" + a + ")*(" + b + ")";
    case 3:
      return "(" + a + ")^2";
    default:
      return "(" + a + ")/(1 + r^2 + (" + b + ")^2)";
  }
}

DiffForm random_form(Rng& rng, const ChartPtr& chart, int degree) {
  DiffForm f(chart, degree);
  int n = static_cast<int>(chart->dim());
  for (forms::IndexMask m = 0; m < (1u << n); ++m) {
    if (forms::popcount(m) != degree) continue;
    if (uniform(rng, 0, 2) == 0) continue;
    f.add(m, random_poly(rng, 2, 2));
  }
  return f;
}

DiffForm random_frame_form(Rng& rng, const ChartPtr& chart, int degree) {
  DiffForm f(chart, degree, forms::Basis::frame);
  int n = static_cast<int>(chart->dim());
  for (forms::IndexMask m = 0; m < (1u << n); ++m) {
    if (forms::popcount(m) != degree) continue;
    f.add(m, Expr(rational(rng, -5, 5)));
  }
  return f;
}

VecField random_field(Rng& rng, const ChartPtr& chart) {
  std::vector<Expr> c;
  for (std::size_t i = 0; i < chart->dim(); ++i) c.push_back(uniform(rng, 0, 2) == 0 ? Expr(0) : random_poly(rng, 2, 2));
  return VecField(chart, c);
}

curv::Tetrad random_tetrad(Rng& rng) {
  auto chart = forms::Chart::euler();
  Expr r(Coords::r());
  Expr ct = sym::cos(Coords::theta());
  std::vector<Expr> vars{r, ct, Expr(Symbol::parameter("m"))};
  auto pick = [&] { return vars[static_cast<std::size_t>(uniform(rng, 0, 2))]; };
  std::vector<DiffForm> th;
  for (std::size_t a = 0; a < 4; ++a) {
    std::vector<Expr> row(4, Expr(0));
    // positive diagonal: c + x^2 with c > 0
    Expr x = pick();
    row[a] = Expr(uniform(rng, 1, 3)) + Expr(uniform(rng, 1, 2)) * x * x;
    if (a > 0 && uniform(rng, 0, 1) == 0) row[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(a) - 1))] = Expr(uniform(rng, -2, 2)) * pick();
    th.push_back(DiffForm::one_form(chart, row));
  }
  return curv::Tetrad(th, {-1, 1, 1, 1});
}

}  // namespace tnv::gen
