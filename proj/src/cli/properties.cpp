#include <functional>
#include <string>

#include "tnv/catalog/catalog.hpp"
#include "tnv/cli/suites.hpp"
#include "tnv/errors.hpp"
#include "tnv/forms/chart.hpp"
#include "tnv/gen/random.hpp"
#include "tnv/parse/parser.hpp"

namespace tnv::cli {

using forms::Coords;
using report::Check;
using report::Status;
using sym::Expr;
using sym::Symbol;

namespace {

// One instance returns an empty string on success, a description otherwise.
using Instance = std::function<std::string(gen::Rng&, std::uint64_t)>;

Check sweep(const std::string& id, const std::string& anchor, std::uint64_t seed, int count, const Instance& body) {
  int failures = 0;
  std::string first;
  for (int i = 0; i < count; ++i) {
    std::uint64_t s = seed * 1000003ull + static_cast<std::uint64_t>(i);
    gen::Rng rng(s);
    std::string what;
    try {
      what = body(rng, s);
    } catch (const std::exception& e) {
      what = std::string("exception: ") + e.what();
    }
    if (!what.empty()) {
      if (failures == 0) first = "instance " + std::to_string(i) + ": " + what;
      ++failures;
    }
  }
  Check c;
  c.id = id;
  c.anchor = anchor;
  c.status = failures == 0 ? Status::pass : Status::fail;
  c.residual = std::to_string(failures) + " failures in " + std::to_string(count) + " instances";
  if (failures) c.residual += "; " + first;
  return c;
}

std::string expect_zero(const Expr& e, std::uint64_t seed, const std::string& what) {
  return sym::is_zero(e, seed) ? std::string() : what + " = " + e.str();
}

std::string expect_zero(const forms::DiffForm& f, const std::string& what) {
  return f.is_zero() ? std::string() : what + " = " + f.str();
}

sym::RationalPoint random_point(gen::Rng& rng) {
  return {{Coords::r(), gen::rational(rng, -4, 4)},
          {Symbol::parameter("m"), gen::rational(rng, -3, 3)},
          {Symbol::parameter("l"), gen::rational(rng, -3, 3)},
          {Coords::theta(), gen::rational(rng, -3, 3)},
          {Coords::psi(), gen::rational(rng, -3, 3)},
          {Coords::phi(), gen::rational(rng, -3, 3)}};
}

}  // namespace

std::vector<Check> property_checks(std::uint64_t seed, int count) {
  std::vector<Check> out;
  const Symbol r = Coords::r(), th = Coords::theta(), ps = Coords::psi();

  out.push_back(sweep("property-ring-axioms", "exact arithmetic", seed, count, [](gen::Rng& rng, std::uint64_t s) {
    Expr a = gen::random_expr(rng), b = gen::random_expr(rng), c = gen::random_expr(rng);
    std::string w;
    if (((a + b) + c) != (a + (b + c))) return std::string("associativity of +");
    if ((a * b) * c != a * (b * c)) return std::string("associativity of *");
    if (a + b != b + a || a * b != b * a) return std::string("commutativity");
    if (!(w = expect_zero(a * (b + c) - a * b - a * c, s, "distributivity")).empty()) return w;
    if (a + Expr(0) != a || a * Expr(1) != a || !(a - a).is_zero()) return std::string("identities");
    if (!a.is_zero() && !(a * a.inverse()).is_one()) return std::string("inverse of " + a.str());
    return std::string();
  }));

  out.push_back(sweep("property-diff-commute", "partial derivatives", seed, count, [&](gen::Rng& rng, std::uint64_t s) {
    Expr e = gen::random_expr(rng);
    std::string w = expect_zero(sym::diff(sym::diff(e, r), th) - sym::diff(sym::diff(e, th), r), s, "d_r d_theta - d_theta d_r");
    if (!w.empty()) return w;
    return expect_zero(sym::diff(sym::diff(e, ps), th) - sym::diff(sym::diff(e, th), ps), s, "d_psi d_theta - d_theta d_psi");
  }));

  out.push_back(sweep("property-substitute-diff", "substitution", seed, count, [&](gen::Rng& rng, std::uint64_t s) {
    Expr e = gen::random_expr(rng);
    sym::Bindings b{{Symbol::parameter("m"), Expr(gen::rational(rng, -4, 4))},
                    {Symbol::parameter("l"), Expr(gen::uniform(rng, -3, 3)) * Expr(r) + Expr(gen::uniform(rng, 1, 3))}};
    // l -> a r + c does not commute with d_r, so only d_theta is compared
    return expect_zero(sym::substitute(sym::diff(e, th), b) - sym::diff(sym::substitute(e, b), th), s,
                       "substitute after d_theta - d_theta after substitute");
  }));

  out.push_back(sweep("property-numeric-enclosure", "interval evaluation", seed, count, [](gen::Rng& rng, std::uint64_t) {
    std::string text = gen::random_text(rng);
    auto ctx = parse::Context::standard();
    auto tree = parse::parse_tree(text);
    Expr e = parse::parse_expr(text, ctx);
    sym::RationalPoint rp = random_point(rng);
    sym::NumericPoint np;
    mpfr_prec_t bits = sym::default_precision();
    for (const auto& [k, v] : rp) np.emplace(k, sym::Interval(v, bits));
    sym::Interval direct = parse::eval_tree(*tree, np, ctx, bits);
    sym::Interval canon = sym::eval_numeric(e, rp, bits);
    if (!direct.overlaps(canon)) return text + ": tree " + direct.str() + " vs canonical " + canon.str();
    return std::string();
  }));

  auto chart = forms::Chart::euler();

  out.push_back(sweep("property-d-squared", "exterior derivative", seed, count, [&](gen::Rng& rng, std::uint64_t) {
    auto a = gen::random_form(rng, chart, gen::uniform(rng, 0, 2));
    return expect_zero(forms::ext_d(forms::ext_d(a)), "dd a");
  }));

  out.push_back(sweep("property-cartan-formula", "Lie derivative", seed, count, [&](gen::Rng& rng, std::uint64_t) {
    auto x = gen::random_field(rng, chart);
    auto y = gen::random_field(rng, chart);
    auto a = gen::random_form(rng, chart, gen::uniform(rng, 1, 2));
    auto b = gen::random_form(rng, chart, 1);
    std::string w = expect_zero(forms::lie_form(x, forms::ext_d(a)) - forms::ext_d(forms::lie_form(x, a)), "[L_X, d] a");
    if (!w.empty()) return w;
    w = expect_zero(forms::lie_form(x, forms::wedge(a, b)) - forms::wedge(forms::lie_form(x, a), b) -
                        forms::wedge(a, forms::lie_form(x, b)),
                    "L_X(a^b) - Leibniz");
    if (!w.empty()) return w;
    return expect_zero(forms::interior(forms::lie_vec(x, y), a) - forms::lie_form(x, forms::interior(y, a)) +
                           forms::interior(y, forms::lie_form(x, a)),
                       "i_[X,Y] a - [L_X, i_Y] a");
  }));

  out.push_back(sweep("property-jacobi", "Lie bracket", seed, count, [&](gen::Rng& rng, std::uint64_t) {
    auto x = gen::random_field(rng, chart), y = gen::random_field(rng, chart), z = gen::random_field(rng, chart);
    auto j = forms::lie_vec(x, forms::lie_vec(y, z)) + forms::lie_vec(y, forms::lie_vec(z, x)) +
             forms::lie_vec(z, forms::lie_vec(x, y));
    return j.is_zero() ? std::string() : "Jacobi sum = " + j.str();
  }));

  out.push_back(sweep("property-hodge-double-star", "Hodge star", seed, count, [&](gen::Rng& rng, std::uint64_t) {
    int p = gen::uniform(rng, 0, 4);
    bool lorentz = gen::uniform(rng, 0, 1) == 0;
    forms::Signature eta = lorentz ? forms::Signature{-1, 1, 1, 1} : forms::Signature{1, 1, 1, 1};
    int orient = gen::uniform(rng, 0, 1) == 0 ? 1 : -1;
    auto a = gen::random_frame_form(rng, chart, p);
    // ** = (-1)^{p(4-p)} sign(det eta)
    int sign = ((p * (4 - p)) % 2 == 0 ? 1 : -1) * (lorentz ? -1 : 1);
    auto twice = forms::hodge_frame(forms::hodge_frame(a, eta, orient), eta, orient);
    return expect_zero(twice - Expr(sign) * a, "**a - sign a (p = " + std::to_string(p) + ")");
  }));

  out.push_back(sweep("property-frame-round-trip", "frame conversion", seed, count, [&](gen::Rng& rng, std::uint64_t) {
    auto t = gen::random_tetrad(rng);
    auto a = gen::random_form(rng, chart, gen::uniform(rng, 1, 3));
    const auto& cf = t.coframe();
    return expect_zero(cf.to_coordinate(cf.to_frame(a)) - a, "round trip - a");
  }));

  out.push_back(sweep("property-bianchi", "curvature identities", seed, count, [&](gen::Rng& rng, std::uint64_t s) {
    auto t = gen::random_tetrad(rng);
    auto b = curv::compute_bundle(t);
    for (const auto& [label, e] : curv::bianchi_residuals(b.riemann)) {
      std::string w = expect_zero(e, s, "R" + label);
      if (!w.empty()) return w;
    }
    for (const auto& [label, e] : curv::ricci_symmetry_residuals(b.ricci)) {
      std::string w = expect_zero(e, s, "Ric" + label);
      if (!w.empty()) return w;
    }
    return std::string();
  }));
  return out;
}

}  // namespace tnv::cli
