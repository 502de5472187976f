#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_map>

#include "tnv/errors.hpp"
#include "tnv/sym/poly.hpp"

namespace tnv::sym {
namespace {

// ---- arithmetic modulo the Mersenne prime 2^61 - 1 ----

constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

std::uint64_t addm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kP ? s - kP : s;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kP - b; }

std::uint64_t mulm(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(z & kP) + static_cast<std::uint64_t>(z >> 61);
  return r >= kP ? r - kP : r;
}

std::uint64_t powm(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1u) r = mulm(r, a);
    a = mulm(a, a);
    e >>= 1u;
  }
  return r;
}

std::uint64_t invm(std::uint64_t a) { return powm(a, kP - 2); }

std::uint64_t reduce_coef(const mpz_class& c) {
  std::uint64_t r = mpz_fdiv_ui(c.get_mpz_t(), kP);
  return r;
}

using UPoly = std::vector<std::uint64_t>;  // index = degree

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Image of p in F_p[v] after evaluating every other variable at `point`.
UPoly image(const Poly& p, SymbolId v, std::unordered_map<SymbolId, std::uint64_t>& point, std::mt19937_64& rng) {
  UPoly out(p.degree(v) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t c = reduce_coef(t.coef);
    unsigned dv = 0;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      SymbolId w = t.mono.var(i);
      if (w == v) {
        dv = t.mono.exp(i);
        continue;
      }
      auto it = point.find(w);
      if (it == point.end()) it = point.emplace(w, rng() % kP).first;
      c = mulm(c, powm(it->second, t.mono.exp(i)));
    }
    out[dv] = addm(out[dv], c);
  }
  trim(out);
  return out;
}

std::size_t ugcd_degree(UPoly a, UPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::uint64_t inv = invm(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = mulm(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = subm(a[i + shift], mulm(q, b[i]));
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Upper bound for deg_v gcd(a, b) from one lucky evaluation; -1 when every
// attempt hit a vanishing leading coefficient.
int modular_degree_bound(const Poly& a, const Poly& b, SymbolId v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::unordered_map<SymbolId, std::uint64_t> point;
    UPoly ia = image(a, v, point, rng);
    UPoly ib = image(b, v, point, rng);
    if (ia.size() != a.degree(v) + 1 || ib.size() != b.degree(v) + 1) continue;
    return static_cast<int>(ugcd_degree(std::move(ia), std::move(ib)));
  }
  return -1;
}

// ---- recursive representation helpers ----

using RPoly = std::vector<Poly>;  // coefficients in the main variable

void rtrim(RPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly positive(Poly p) {
  if (!p.is_zero() && p.leading().coef < 0) return -p;
  return p;
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: inexact division in gcd");
  return std::move(*q);
}

Poly rcontent(const RPoly& p) {
  Poly g;
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// lc(b)^(da-db+1) * a mod b
RPoly prem(RPoly a, const RPoly& b) {
  const Poly& lb = b.back();
  std::size_t db = b.size() - 1;
  std::size_t steps = a.size() - b.size() + 1;
  std::size_t done = 0;
  while (!a.empty() && a.size() >= b.size()) {
    Poly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    a.pop_back();
    rtrim(a);
    ++done;
  }
  if (done < steps) {
    Poly f = lb.pow(static_cast<unsigned>(steps - done));
    for (auto& c : a) c = c * f;
  }
  return a;
}

Poly prs_gcd(const Poly& a, const Poly& b, SymbolId v) {
  RPoly A = a.coefficients_in(v);
  RPoly B = b.coefficients_in(v);
  Poly ca = rcontent(A);
  Poly cb = rcontent(B);
  for (auto& c : A) c = exact(c, ca);
  for (auto& c : B) c = exact(c, cb);
  Poly content = gcd(ca, cb);
  if (A.size() < B.size()) std::swap(A, B);
  Poly g(1);
  Poly h(1);
  while (true) {
    std::size_t delta = A.size() - B.size();
    RPoly R = prem(A, B);
    if (R.empty()) break;
    if (R.size() == 1) {
      B = RPoly{Poly(1)};
      break;
    }
    A = std::move(B);
    Poly divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : R) c = exact(c, divisor);
    B = std::move(R);
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Poly cB = rcontent(B);
  for (auto& c : B) c = exact(c, cB);
  return positive(Poly::from_coefficients(v, B) * content);
}

Poly gcd_primitive(const Poly& a, const Poly& b);

std::uint64_t seed_of(const Poly& a, const Poly& b) { return a.hash() * 0x9e3779b97f4a7c15ull ^ b.hash(); }

// a and b are non-zero, free of monomial content and integer content
Poly gcd_primitive(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b || a == -b) return positive(a);
  std::vector<SymbolId> va = a.variables();
  std::vector<SymbolId> vb = b.variables();
  for (SymbolId v : va) {
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_in(a, v), b);
  }
  for (SymbolId v : vb) {
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_in(b, v));
  }
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (large.divide_exact(small)) return positive(small);

  std::uint64_t seed = seed_of(a, b);
  SymbolId best = kNoSymbol;
  unsigned best_deg = ~0u;
  for (SymbolId v : va) {
    int bound = modular_degree_bound(a, b, v, seed + v);
    if (bound == 0) return gcd(content_in(a, v), content_in(b, v));
    unsigned d = std::max(a.degree(v), b.degree(v));
    if (d < best_deg) {
      best_deg = d;
      best = v;
    }
  }
  return prs_gcd(a, b, best);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive(b);
  if (b.is_zero()) return positive(a);
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  mpz_class ca = a.content();
  mpz_class cb = b.content();
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Monomial m = Monomial::gcd(ma, mb);
  if (a.is_constant() || b.is_constant()) return Poly(c);
  Poly g = gcd_primitive(a.divide_content(ma, ca), b.divide_content(mb, cb));
  return g.times(m, c);
}

Poly content_in(const Poly& p, SymbolId v) {
  if (!p.contains(v)) return positive(p);
  std::vector<Poly> coeffs = p.coefficients_in(v);
  // smallest coefficients first keeps the running gcd cheap
  std::sort(coeffs.begin(), coeffs.end(), [](const Poly& x, const Poly& y) { return x.size() < y.size(); });
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

}  // namespace tnv::sym
