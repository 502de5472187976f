#include "tnv/sym/numeric.hpp"

#include <cstdlib>
#include <random>
#include <set>
#include <unordered_map>

#include "tnv/errors.hpp"

namespace tnv::sym {

mpfr_prec_t default_precision() {
  if (const char* env = std::getenv("VERIFY_PRECISION_BITS")) {
    char* end = nullptr;
    long bits = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && bits >= MPFR_PREC_MIN && bits <= 1 << 20) return bits;
  }
  return 128;
}

namespace {

class Evaluator {
 public:
  Evaluator(const NumericPoint& point, mpfr_prec_t bits) : point_(point), bits_(bits) {}

  const Interval& value(SymbolId v) {
    if (auto it = cache_.find(v); it != cache_.end()) return it->second;
    Interval x = compute(v);
    return cache_.emplace(v, std::move(x)).first->second;
  }

  Interval poly(const Poly& p) {
    Interval acc(bits_);
    std::unordered_map<std::uint64_t, Interval> powers;
    for (const auto& t : p.terms()) {
      Interval term(mpq_class(t.coef), bits_);
      for (std::size_t i = 0; i < t.mono.size(); ++i) {
        SymbolId v = t.mono.var(i);
        unsigned e = t.mono.exp(i);
        std::uint64_t key = (std::uint64_t{v} << 16) | e;
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, value(v).pow(e)).first;
        term = term * it->second;
      }
      acc = acc + term;
    }
    return acc;
  }

 private:
  Interval compute(SymbolId v) {
    if (auto it = point_.find(Symbol(v)); it != point_.end()) {
      Interval x(bits_);
      x = it->second;
      return x;
    }
    const SymbolInfo& info = symbol_info(v);
    if (info.kind == SymbolKind::trig) {
      const Interval& x = value(info.argument);
      return info.trig == TrigFn::sin ? x.sin() : x.cos();
    }
    if (info.kind == SymbolKind::radical) {
      Interval r = poly(*info.radicand);
      if (mpfr_sgn(r.lo()) < 0) {
        throw DomainError("radicand of " + info.name + " is not positive at the point");
      }
      return r.sqrt();
    }
    throw Error("evaluation point does not bind '" + info.name + "'");
  }

  const NumericPoint& point_;
  mpfr_prec_t bits_;
  std::unordered_map<SymbolId, Interval> cache_;
};

void collect_free(SymbolId v, std::set<SymbolId>& out, std::set<SymbolId>& seen) {
  if (!seen.insert(v).second) return;
  const SymbolInfo& info = symbol_info(v);
  switch (info.kind) {
    case SymbolKind::trig:
      out.insert(info.argument);
      break;
    case SymbolKind::radical:
      for (SymbolId w : info.radicand->variables()) collect_free(w, out, seen);
      break;
    default:
      out.insert(v);
  }
}

}  // namespace

Interval eval_numeric(const Poly& p, const NumericPoint& point, mpfr_prec_t bits) {
  Evaluator ev(point, bits);
  return ev.poly(p);
}

Interval eval_numeric(const Expr& e, const NumericPoint& point, mpfr_prec_t bits) {
  Evaluator ev(point, bits);
  Interval n = ev.poly(e.num());
  if (e.den().is_one()) return n;
  Interval d = ev.poly(e.den());
  if (d.contains_zero()) throw DomainError("denominator enclosure contains zero");
  return n / d;
}

Interval eval_numeric(const Expr& e, const RationalPoint& point, mpfr_prec_t bits) {
  NumericPoint p;
  for (const auto& [s, q] : point) p.emplace(s, Interval(q, bits));
  return eval_numeric(e, p, bits);
}

std::vector<Symbol> free_symbols(const Expr& e) {
  std::set<SymbolId> out;
  std::set<SymbolId> seen;
  for (SymbolId v : e.variables()) collect_free(v, out, seen);
  std::vector<Symbol> r;
  for (SymbolId v : out) r.emplace_back(v);
  return r;
}

bool is_zero(const Expr& e, std::uint64_t seed) {
  bool canonical = e.is_zero();
  if (e.is_constant()) return canonical;
  std::vector<Symbol> vars = free_symbols(e);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 7);
  constexpr int kPoints = 20;
  constexpr int kAttempts = 400;
  mpfr_prec_t bits = default_precision();
  int evaluated = 0;
  bool saw_nonzero = false;
  for (int attempt = 0; attempt < kAttempts && evaluated < kPoints; ++attempt) {
    RationalPoint pt;
    for (Symbol s : vars) pt[s] = mpq_class(num(rng), den(rng));
    Interval v(bits);
    try {
      v = eval_numeric(e, pt, bits);
    } catch (const DomainError&) {
      continue;
    }
    ++evaluated;
    if (canonical && !v.contains_zero()) {
      throw CanonicalizationMismatch("canonical zero evaluates to " + v.str(12));
    }
    if (!v.contains_zero()) saw_nonzero = true;
  }
  if (!canonical && evaluated > 0 && !saw_nonzero) {
    throw CanonicalizationMismatch("non-zero canonical form " + e.str() + " encloses zero at every sample point");
  }
  return canonical;
}

}  // namespace tnv::sym
