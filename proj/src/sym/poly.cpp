#include "tnv/sym/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tnv/errors.hpp"

namespace tnv::sym {

// ---------------------------------------------------------------------------
// Monomial

std::uint32_t Monomial::pack(SymbolId v, unsigned e) {
  if (e > kExpMask) throw Error("exponent overflow in monomial");
  return (v << kExpBits) | e;
}

Monomial Monomial::of(SymbolId v, unsigned e) {
  Monomial m;
  if (e > 0) m.packed_.push_back(pack(v, e));
  return m;
}

unsigned Monomial::degree(SymbolId v) const {
  for (std::uint32_t p : packed_) {
    SymbolId w = p >> kExpBits;
    if (w == v) return p & kExpMask;
    if (w > v) break;
  }
  return 0;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (std::uint32_t p : packed_) d += p & kExpMask;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.packed_.reserve(size() + o.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < size() && j < o.size()) {
    SymbolId a = var(i);
    SymbolId b = o.var(j);
    if (a == b) {
      r.packed_.push_back(pack(a, exp(i) + o.exp(j)));
      ++i;
      ++j;
    } else if (a < b) {
      r.packed_.push_back(packed_[i++]);
    } else {
      r.packed_.push_back(o.packed_[j++]);
    }
  }
  for (; i < size(); ++i) r.packed_.push_back(packed_[i]);
  for (; j < o.size(); ++j) r.packed_.push_back(o.packed_[j]);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  // every factor of this must appear in o with at least the same exponent
  std::size_t j = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    SymbolId v = var(i);
    while (j < o.size() && o.var(j) < v) ++j;
    if (j == o.size() || o.var(j) != v || o.exp(j) < exp(i)) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
  Monomial r;
  std::size_t j = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    SymbolId v = var(i);
    unsigned e = exp(i);
    if (j < o.size() && o.var(j) == v) {
      e -= o.exp(j);
      ++j;
    }
    if (e > 0) r.packed_.push_back(pack(v, e));
  }
  return r;
}

Monomial Monomial::with_degree(SymbolId v, unsigned e) const {
  Monomial r;
  bool placed = false;
  for (std::size_t i = 0; i < size(); ++i) {
    SymbolId w = var(i);
    if (!placed && w >= v) {
      if (e > 0) r.packed_.push_back(pack(v, e));
      placed = true;
      if (w == v) continue;
    }
    r.packed_.push_back(packed_[i]);
  }
  if (!placed && e > 0) r.packed_.push_back(pack(v, e));
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    SymbolId v = a.var(i);
    while (j < b.size() && b.var(j) < v) ++j;
    if (j < b.size() && b.var(j) == v) r.packed_.push_back(pack(v, std::min(a.exp(i), b.exp(j))));
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (std::uint32_t p : packed_) h = (h ^ p) * 0x100000001b3ull;
  return h;
}

int compare(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    SymbolId va = a.var(i);
    SymbolId vb = b.var(i);
    if (va != vb) return va < vb ? 1 : -1;
    unsigned ea = a.exp(i);
    unsigned eb = b.exp(i);
    if (ea != eb) return ea > eb ? 1 : -1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Poly

namespace {

// Merges two sorted term lists.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coef} : b[j]);
      ++j;
    } else {
      mpz_class s = subtract ? mpz_class(a[i].coef - b[j].coef) : mpz_class(a[i].coef + b[j].coef);
      if (s != 0) out.push_back(Term{a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(subtract ? Term{b[j].mono, -b[j].coef} : b[j]);
  return out;
}

std::vector<Term> merge_move(std::vector<Term>&& a, std::vector<Term>&& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(std::move(a[i++]));
    } else if (c < 0) {
      out.push_back(std::move(b[j++]));
    } else {
      a[i].coef += b[j].coef;
      if (a[i].coef != 0) out.push_back(std::move(a[i]));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
  for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
  return out;
}

}  // namespace

Poly::Poly(long c) {
  if (c != 0) terms_.push_back(Term{Monomial(), mpz_class(c)});
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms_.push_back(Term{Monomial(), c});
}

Poly Poly::variable(Symbol s) {
  Poly p;
  p.terms_.push_back(Term{Monomial::of(s.id()), mpz_class(1)});
  return p;
}

Poly Poly::term(Monomial m, mpz_class c) {
  Poly p;
  if (c != 0) p.terms_.push_back(Term{std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.empty() && terms_[0].coef == 1; }

mpz_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  const Term& last = terms_.back();
  return last.mono.empty() ? last.coef : mpz_class(0);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  Poly r;
  r.terms_ = merge_terms(terms_, o.terms_, false);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (o.is_zero()) return *this;
  Poly r;
  r.terms_ = merge_terms(terms_, o.terms_, true);
  return r;
}

Poly Poly::times(const Monomial& m, const mpz_class& c) const {
  Poly r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coef * c});
  return r;
}

Poly Poly::scaled(const mpz_class& c) const { return times(Monomial(), c); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  const Poly& a = size() <= o.size() ? *this : o;
  const Poly& b = size() <= o.size() ? o : *this;
  if (a.size() == 1) return b.times(a.terms_[0].mono, a.terms_[0].coef);
  // each row a_i * b is sorted because the term order is multiplicative;
  // merge rows pairwise
  std::vector<std::vector<Term>> rows;
  rows.reserve(a.size());
  for (const auto& t : a.terms_) rows.push_back(b.times(t.mono, t.coef).terms_);
  while (rows.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((rows.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
      next.push_back(merge_move(std::move(rows[i]), std::move(rows[i + 1])));
    }
    if (rows.size() % 2 == 1) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  Poly r;
  r.terms_ = std::move(rows.front());
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result(1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& o) const {
  if (o.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Poly();
  if (o.size() == 1) {
    const Term& d = o.terms_[0];
    Poly q;
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!d.mono.divides(t.mono) || !mpz_divisible_p(t.coef.get_mpz_t(), d.coef.get_mpz_t())) {
        return std::nullopt;
      }
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), t.coef.get_mpz_t(), d.coef.get_mpz_t());
      q.terms_.push_back(Term{t.mono.quotient(d.mono), std::move(c)});
    }
    return q;
  }
  // cheap rejection on per-variable degrees
  for (SymbolId v : o.variables()) {
    if (o.degree(v) > degree(v)) return std::nullopt;
  }
  const Term& lead = o.terms_.front();
  std::vector<Term> quotient;
  Poly rem = *this;
  while (!rem.is_zero()) {
    const Term& lt = rem.terms_.front();
    if (!lead.mono.divides(lt.mono) || !mpz_divisible_p(lt.coef.get_mpz_t(), lead.coef.get_mpz_t())) {
      return std::nullopt;
    }
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), lt.coef.get_mpz_t(), lead.coef.get_mpz_t());
    Monomial m = lt.mono.quotient(lead.mono);
    rem = rem - o.times(m, c);
    quotient.push_back(Term{std::move(m), std::move(c)});
  }
  Poly q;
  q.terms_ = std::move(quotient);  // produced in decreasing order
  return q;
}

Poly Poly::divide_content(const Monomial& m, const mpz_class& c) const {
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
    r.terms_.push_back(Term{t.mono.quotient(m), std::move(q)});
  }
  return r;
}

unsigned Poly::degree(SymbolId v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
  return d;
}

bool Poly::contains(SymbolId v) const {
  for (const auto& t : terms_) {
    if (t.mono.degree(v) > 0) return true;
  }
  return false;
}

std::vector<SymbolId> Poly::variables() const {
  std::vector<SymbolId> vs;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) vs.push_back(t.mono.var(i));
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

Poly Poly::partial(SymbolId v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono.degree(v);
    if (e == 0) continue;
    out.push_back(Term{t.mono.with_degree(v, e - 1), t.coef * e});
  }
  // lowering one exponent can reorder terms in lex order
  return from_terms(std::move(out));
}

std::vector<Poly> Poly::coefficients_in(SymbolId v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    unsigned e = t.mono.degree(v);
    buckets[e].push_back(Term{t.mono.with_degree(v, 0), t.coef});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(SymbolId v, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    for (const auto& t : coeffs[e].terms_) {
      all.push_back(Term{t.mono * Monomial::of(v, static_cast<unsigned>(e)), t.coef});
    }
  }
  return from_terms(std::move(all));
}

Poly Poly::negate_odd(SymbolId v) const {
  Poly r = *this;
  for (auto& t : r.terms_) {
    if (t.mono.degree(v) % 2 == 1) t.coef = -t.coef;
  }
  return r;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) {
    if (g.empty()) break;
    g = Monomial::gcd(g, t.mono);
  }
  return g;
}

namespace {

// Factors of a monomial sorted by symbol name.
std::vector<std::pair<SymbolId, unsigned>> named_factors(const Monomial& m) {
  std::vector<std::pair<SymbolId, unsigned>> f;
  for (std::size_t i = 0; i < m.size(); ++i) f.emplace_back(m.var(i), m.exp(i));
  std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return name_less(a.first, b.first); });
  return f;
}

// Print order: higher total degree first, then name-lexicographic.
bool print_before(const Term& a, const Term& b) {
  unsigned da = a.mono.total_degree();
  unsigned db = b.mono.total_degree();
  if (da != db) return da > db;
  auto fa = named_factors(a.mono);
  auto fb = named_factors(b.mono);
  std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (fa[i].first != fb[i].first) return name_less(fa[i].first, fb[i].first);
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
  }
  return fa.size() > fb.size();
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) { return print_before(*a, *b); });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : order) {
    mpz_class c = t->coef;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool unit = t->mono.empty() ? false : (c == 1);
    if (!unit) {
      os << c.get_str();
      if (!t->mono.empty()) os << "*";
    }
    bool first_factor = true;
    for (auto [v, e] : named_factors(t->mono)) {
      if (!first_factor) os << "*";
      os << symbol_info(v).name;
      if (e > 1) os << "^" << e;
      first_factor = false;
    }
    first = false;
  }
  return os.str();
}

int Poly::display_sign() const {
  if (terms_.empty()) return 0;
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (print_before(t, *best)) best = &t;
  }
  return sgn(best->coef);
}

std::size_t Poly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& t : terms_) {
    h ^= t.mono.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(mpz_get_si(t.coef.get_mpz_t())) + (h << 6) + (h >> 2);
  }
  return h;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Relation reduction

namespace {

bool term_needs_reduction(const Term& t) {
  for (std::size_t i = 0; i < t.mono.size(); ++i) {
    if (t.mono.exp(i) >= 2 && symbol_info(t.mono.var(i)).radicand) return true;
  }
  return false;
}

}  // namespace

bool needs_reduction(const Poly& p) {
  for (const auto& t : p.terms()) {
    if (term_needs_reduction(t)) return true;
  }
  return false;
}

Poly reduce_relations(const Poly& p) {
  if (!needs_reduction(p)) return p;
  // group offending terms by (symbol, half power) so each radicand power is
  // multiplied once
  std::vector<Term> plain;
  std::map<std::pair<SymbolId, unsigned>, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    SymbolId pick = kNoSymbol;
    int best_level = -1;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const SymbolInfo& info = symbol_info(t.mono.var(i));
      if (t.mono.exp(i) >= 2 && info.radicand && info.level > best_level) {
        best_level = info.level;
        pick = t.mono.var(i);
      }
    }
    if (pick == kNoSymbol) {
      plain.push_back(t);
      continue;
    }
    unsigned e = t.mono.degree(pick);
    groups[{pick, e / 2}].push_back(Term{t.mono.with_degree(pick, e % 2), t.coef});
  }
  Poly result = Poly::from_terms(std::move(plain));
  for (auto& [key, terms] : groups) {
    const Poly& radicand = *symbol_info(key.first).radicand;
    Poly rest = Poly::from_terms(std::move(terms));
    result += reduce_relations(rest * radicand.pow(key.second));
  }
  return result;
}

}  // namespace tnv::sym
