#include "tnv/sym/expr.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "tnv/errors.hpp"

namespace tnv::sym {
namespace {

Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_one()) return a;
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: gcd does not divide");
  return std::move(*q);
}

// Highest-level reducible symbol present in p, or kNoSymbol.
SymbolId top_reducible(const Poly& p) {
  SymbolId best = kNoSymbol;
  int level = -1;
  for (SymbolId v : p.variables()) {
    const SymbolInfo& info = symbol_info(v);
    if (info.radicand && info.level > level) {
      level = info.level;
      best = v;
    }
  }
  return best;
}

}  // namespace

Expr::Expr() : Expr(Poly(), Poly(1)) {}

Expr::Expr(long c) : rep_(std::make_shared<const Rep>(Rep{Poly(c), Poly(1)})) {}

Expr::Expr(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  rep_ = std::make_shared<const Rep>(Rep{Poly(c.get_num()), c == 0 ? Poly(1) : Poly(c.get_den())});
}

Expr::Expr(Symbol s) : rep_(std::make_shared<const Rep>(Rep{Poly::variable(s), Poly(1)})) {}

Expr::Expr(const Poly& p) : Expr(fraction(p, Poly(1))) {}

Expr::Expr(Poly num, Poly den) : rep_(std::make_shared<const Rep>(Rep{std::move(num), std::move(den)})) {}

Expr Expr::rational(long num, long den) { return Expr(mpq_class(num, den)); }

Expr Expr::make(Poly num, Poly den) {
  if (num.is_zero()) return Expr();
  if (den.display_sign() < 0) {
    num = -num;
    den = -den;
  }
  return Expr(std::move(num), std::move(den));
}

Expr Expr::fraction(const Poly& n, const Poly& d) {
  if (d.is_zero()) throw DivisionByZero("division by zero");
  Poly num = reduce_relations(n);
  if (num.is_zero()) return Expr();
  Poly den = reduce_relations(d);
  if (den.is_zero()) throw DivisionByZero("denominator vanishes modulo the radical relations");
  // multiply by conjugates until no reducible symbol is left downstairs
  for (SymbolId s = top_reducible(den); s != kNoSymbol; s = top_reducible(den)) {
    Poly conj = den.negate_odd(s);
    num = reduce_relations(num * conj);
    den = reduce_relations(den * conj);
    if (den.is_zero()) throw DivisionByZero("denominator vanishes modulo the radical relations");
    if (num.is_zero()) return Expr();
  }
  if (!den.is_one()) {
    Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  return make(std::move(num), std::move(den));
}

std::optional<mpq_class> Expr::rational_value() const {
  if (!is_constant()) return std::nullopt;
  mpq_class q(num().constant_value(), den().constant_value());
  q.canonicalize();
  return q;
}

std::vector<SymbolId> Expr::variables() const {
  std::vector<SymbolId> a = num().variables();
  std::vector<SymbolId> b = den().variables();
  std::vector<SymbolId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Expr Expr::operator-() const {
  if (is_zero()) return *this;
  return Expr(-num(), den());
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den() == b.den()) {
    Poly num = a.num() + b.num();
    if (num.is_zero()) return Expr();
    if (a.den().is_one()) return Expr(std::move(num), a.den());
    Poly g = gcd(num, a.den());
    return Expr::make(exact_div(num, g), exact_div(a.den(), g));
  }
  // Henrici: only the gcd of the denominators can cancel
  Poly g = gcd(a.den(), b.den());
  Poly ad = exact_div(a.den(), g);
  Poly bd = exact_div(b.den(), g);
  Poly num = a.num() * bd + b.num() * ad;
  if (num.is_zero()) return Expr();
  Poly den = a.den() * bd;
  if (!g.is_one()) {
    Poly h = gcd(num, g);
    if (!h.is_one()) {
      num = exact_div(num, h);
      den = exact_div(den, h);
    }
  }
  return Expr::make(std::move(num), std::move(den));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  Poly g1 = b.den().is_one() ? Poly(1) : gcd(a.num(), b.den());
  Poly g2 = a.den().is_one() ? Poly(1) : gcd(b.num(), a.den());
  Poly num = exact_div(a.num(), g1) * exact_div(b.num(), g2);
  Poly den = exact_div(a.den(), g2) * exact_div(b.den(), g1);
  if (needs_reduction(num)) {
    num = reduce_relations(num);
    if (num.is_zero()) return Expr();
    if (!den.is_one()) {
      Poly g = gcd(num, den);
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  return Expr::make(std::move(num), std::move(den));
}

Expr Expr::inverse() const {
  if (is_zero()) throw DivisionByZero("division by zero");
  return fraction(den(), num());
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero");
  if (a.is_zero()) return a;
  return a * b.inverse();
}

Expr Expr::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Expr result(1);
  Expr base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

std::string Expr::str() const {
  if (den().is_one()) return num().str();
  std::string n = num().str();
  if (num().size() > 1) n = "(" + n + ")";
  std::string d = den().str();
  bool bare = den().size() == 1 && den().leading().coef == 1 && den().leading().mono.size() == 1 &&
              den().leading().mono.exp(0) == 1;
  if (!bare && !(den().is_constant())) d = "(" + d + ")";
  return n + "/" + d;
}

std::size_t Expr::hash() const { return num().hash() * 31 + den().hash(); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.rep_ == b.rep_) return true;
  return a.num() == b.num() && a.den() == b.den();
}

Expr sin(Symbol coordinate) { return Expr(Symbol::sin_of(coordinate)); }
Expr cos(Symbol coordinate) { return Expr(Symbol::cos_of(coordinate)); }

// ---------------------------------------------------------------------------
// differentiation

namespace {

Expr poly_diff(const Poly& p, Symbol x);

Expr var_derivative(SymbolId v, Symbol x) {
  const SymbolInfo& info = symbol_info(v);
  switch (info.kind) {
    case SymbolKind::coordinate:
      return Expr(v == x.id() ? 1 : 0);
    case SymbolKind::parameter:
      return Expr();
    case SymbolKind::function:
      if (info.argument != x.id()) return Expr();
      return Expr(Symbol(v).derivative());
    case SymbolKind::trig:
      if (info.argument != x.id()) return Expr();
      if (info.trig == TrigFn::sin) return Expr(Symbol(info.partner));
      return -Expr(Symbol(info.partner));
    case SymbolKind::radical: {
      Expr dp = poly_diff(*info.radicand, x);
      if (dp.is_zero()) return dp;
      return dp * Expr(Symbol(v)) / (Expr(2) * Expr(*info.radicand));
    }
  }
  return Expr();
}

Expr poly_diff(const Poly& p, Symbol x) {
  Expr acc;
  for (SymbolId v : p.variables()) {
    Expr dv = var_derivative(v, x);
    if (dv.is_zero()) continue;
    acc += Expr(p.partial(v)) * dv;
  }
  return acc;
}

}  // namespace

Expr diff(const Expr& e, Symbol x) {
  if (x.kind() != SymbolKind::coordinate) throw Error("diff: '" + x.name() + "' is not a coordinate");
  Expr dn = poly_diff(e.num(), x);
  if (e.den().is_one()) return dn;
  Expr dd = poly_diff(e.den(), x);
  Expr den(e.den());
  if (dd.is_zero()) return dn / den;
  return (dn * den - Expr(e.num()) * dd) / (den * den);
}

// ---------------------------------------------------------------------------
// substitution

namespace {

class Substituter {
 public:
  explicit Substituter(const Bindings& b) : bindings_(b) {}
  Substituter(Symbol even, Expr square) : bindings_(empty_), even_(even), square_(std::move(square)) {}

  // nullopt when no symbol of p changes
  std::optional<Expr> apply(const Poly& p) {
    std::vector<SymbolId> vars = p.variables();
    struct Change {
      SymbolId v;
      Poly num;
      Poly den;
      unsigned top;  // maximal exponent (halved for the even variable)
      bool even;
      std::vector<Poly> num_pows;
      std::vector<Poly> den_pows;
    };
    std::vector<Change> changes;
    for (SymbolId v : vars) {
      if (even_.valid() && v == even_.id()) {
        unsigned top = p.degree(v);
        if (top % 2 != 0) throw Error("substitute_even: odd power of '" + even_.name() + "'");
        changes.push_back(Change{v, square_.num(), square_.den(), top / 2, true, {}, {}});
        continue;
      }
      std::optional<Expr> val = value(v);
      if (!val) continue;
      changes.push_back(Change{v, val->num(), val->den(), p.degree(v), false, {}, {}});
    }
    if (changes.empty()) return std::nullopt;
    Poly den(1);
    for (auto& c : changes) {
      c.num_pows.push_back(Poly(1));
      c.den_pows.push_back(Poly(1));
      for (unsigned k = 1; k <= c.top; ++k) {
        c.num_pows.push_back(c.num_pows.back() * c.num);
        c.den_pows.push_back(c.den_pows.back() * c.den);
      }
      den *= c.den_pows.back();
    }
    std::vector<Poly> parts;
    parts.reserve(p.size());
    for (const auto& t : p.terms()) {
      Monomial keep = t.mono;
      Poly factor(1);
      for (const auto& c : changes) {
        unsigned e = t.mono.degree(c.v);
        keep = keep.with_degree(c.v, 0);
        if (c.even) {
          if (e % 2 != 0) throw Error("substitute_even: odd power of '" + even_.name() + "'");
          e /= 2;
        }
        const Poly& np = c.num_pows[e];
        const Poly& dp = c.den_pows[c.top - e];
        if (!np.is_one()) factor *= np;
        if (!dp.is_one()) factor *= dp;
      }
      parts.push_back(factor.times(keep, t.coef));
    }
    // pairwise summation keeps the merges balanced
    while (parts.size() > 1) {
      std::vector<Poly> next;
      for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
      if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
      parts = std::move(next);
    }
    return Expr::fraction(parts.empty() ? Poly() : parts.front(), den);
  }

  Expr run(const Expr& e) {
    std::optional<Expr> n = apply(e.num());
    std::optional<Expr> d = e.den().is_one() ? std::nullopt : apply(e.den());
    if (!n && !d) return e;
    Expr nn = n ? *n : Expr(e.num());
    Expr dd = d ? *d : Expr(e.den());
    return nn / dd;
  }

 private:
  std::optional<Expr> value(SymbolId v) {
    if (auto it = cache_.find(v); it != cache_.end()) return it->second;
    std::optional<Expr> r = compute(v);
    cache_.emplace(v, r);
    return r;
  }

  std::optional<Expr> explicit_binding(SymbolId v) const {
    auto it = bindings_.find(Symbol(v));
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Expr> compute(SymbolId v) {
    const SymbolInfo& info = symbol_info(v);
    std::optional<Expr> given = explicit_binding(v);
    switch (info.kind) {
      case SymbolKind::function: {
        if (info.order == 0) return given;
        // previous member of the derivative chain
        SymbolId prev = info.base;
        while (symbol_info(prev).next != v) prev = symbol_info(prev).next;
        std::optional<Expr> lower = value(prev);
        if (!lower) return given;
        Expr derived = diff(*lower, Symbol(info.argument));
        if (given && !(*given == derived)) {
          throw InconsistentBinding("binding of '" + info.name + "' disagrees with the derivative of its base");
        }
        return derived;
      }
      case SymbolKind::trig: {
        if (given) return given;
        SymbolId x = info.argument;
        if (even_.valid() && x == even_.id()) throw Error("substitute_even: trig atom of '" + even_.name() + "'");
        std::optional<Expr> xv = value(x);
        if (!xv) return std::nullopt;
        if (xv->is_zero()) return Expr(info.trig == TrigFn::sin ? 0 : 1);
        if (xv->den().is_one() && xv->num().size() == 1 && xv->num().leading().coef == 1) {
          const Monomial& m = xv->num().leading().mono;
          if (m.size() == 1 && m.exp(0) == 1 && symbol_info(m.var(0)).kind == SymbolKind::coordinate) {
            Symbol y(m.var(0));
            return info.trig == TrigFn::sin ? sin(y) : cos(y);
          }
        }
        throw Error("cannot substitute '" + symbol_info(x).name + "' inside " + info.name);
      }
      case SymbolKind::radical: {
        std::optional<Expr> rad = apply(*info.radicand);
        if (given) {
          Expr target = rad ? *rad : Expr(*info.radicand);
          if (!(*given * *given == target)) {
            throw InconsistentBinding("binding of radical '" + info.name + "' does not square to its radicand");
          }
          return given;
        }
        if (!rad) return std::nullopt;
        return sqrt_expr(*rad);
      }
      default:
        return given;
    }
  }

  static inline const Bindings empty_{};
  const Bindings& bindings_;
  Symbol even_;
  Expr square_;
  std::unordered_map<SymbolId, std::optional<Expr>> cache_;
};

// ---- square roots ----

struct SquareSplit {
  mpz_class outside;
  mpz_class inside;
};

SquareSplit split_square(const mpz_class& c) {
  SquareSplit s{1, c};
  if (mpz_perfect_square_p(c.get_mpz_t())) {
    mpz_sqrt(s.outside.get_mpz_t(), c.get_mpz_t());
    s.inside = 1;
    return s;
  }
  for (unsigned long p = 2; p < 2000; ++p) {
    mpz_class p2 = mpz_class(p) * p;
    if (p2 > s.inside) break;
    while (mpz_divisible_p(s.inside.get_mpz_t(), p2.get_mpz_t())) {
      s.inside /= p2;
      s.outside *= p;
    }
  }
  if (mpz_perfect_square_p(s.inside.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), s.inside.get_mpz_t());
    s.outside *= r;
    s.inside = 1;
  }
  return s;
}

// Square root of q when q is a perfect square in Z[x...]; the returned root
// has a positive leading term in print order.
std::optional<Poly> poly_sqrt(const Poly& q) {
  if (q.is_zero()) return Poly();
  const Term& lt = q.leading();
  if (lt.coef < 0 || !mpz_perfect_square_p(lt.coef.get_mpz_t())) return std::nullopt;
  Monomial half;
  for (std::size_t i = 0; i < lt.mono.size(); ++i) {
    if (lt.mono.exp(i) % 2 != 0) return std::nullopt;
    half = half * Monomial::of(lt.mono.var(i), lt.mono.exp(i) / 2);
  }
  std::vector<SymbolId> vars = q.variables();
  std::unordered_map<SymbolId, unsigned> bound;
  for (SymbolId v : vars) {
    unsigned d = q.degree(v);
    if (d % 2 != 0) return std::nullopt;
    bound[v] = d / 2;
  }
  mpz_class c;
  mpz_sqrt(c.get_mpz_t(), lt.coef.get_mpz_t());
  Poly root = Poly::term(half, c);
  Poly rem = q - root * root;
  std::size_t guard = 4 * q.size() + 16;
  while (!rem.is_zero()) {
    if (guard-- == 0) return std::nullopt;
    const Term& r = rem.leading();
    if (!half.divides(r.mono)) return std::nullopt;
    mpz_class two_c = 2 * c;
    if (!mpz_divisible_p(r.coef.get_mpz_t(), two_c.get_mpz_t())) return std::nullopt;
    Monomial m = r.mono.quotient(half);
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto it = bound.find(m.var(i));
      if (it == bound.end() || m.exp(i) > it->second) return std::nullopt;
    }
    mpz_class k;
    mpz_divexact(k.get_mpz_t(), r.coef.get_mpz_t(), two_c.get_mpz_t());
    Poly t = Poly::term(m, k);
    rem = rem - (root.scaled(2) + t) * t;
    root += t;
  }
  if (root.display_sign() < 0) root = -root;
  return root;
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  Substituter s(bindings);
  return s.run(e);
}

Expr substitute_even(const Expr& e, Symbol v, const Expr& square) {
  Substituter s(v, square);
  return s.run(e);
}

Expr sqrt_expr(const Expr& e, std::string_view alias) {
  if (e.is_zero()) return e;
  Poly p = e.num() * e.den();
  p = reduce_relations(p);
  mpz_class c = p.content();
  if (p.leading().coef < 0) c = -c;
  Monomial mc = p.monomial_content();
  Poly q = p.divide_content(mc, c);
  SquareSplit split = split_square(abs(c));
  Monomial outside_m;
  Monomial inside_m;
  for (std::size_t i = 0; i < mc.size(); ++i) {
    if (mc.exp(i) / 2 > 0) outside_m = outside_m * Monomial::of(mc.var(i), mc.exp(i) / 2);
    if (mc.exp(i) % 2 != 0) inside_m = inside_m * Monomial::of(mc.var(i), 1);
  }
  Poly outside = Poly::term(outside_m, split.outside);
  mpz_class sign = c < 0 ? -1 : 1;
  Poly radicand = Poly::term(inside_m, split.inside * sign);
  if (auto root = poly_sqrt(q)) {
    outside *= *root;
  } else if (auto nroot = poly_sqrt(-q)) {
    outside *= *nroot;
    radicand = -radicand;
  } else {
    radicand *= q;
  }
  Expr result = Expr::fraction(outside, e.den());
  if (radicand.is_one()) return result;
  if (radicand.is_constant() && radicand.constant_value() < 0) {
    throw DomainError("square root of the negative constant " + radicand.str());
  }
  return result * Expr(Symbol::radical(radicand, alias));
}

}  // namespace tnv::sym
