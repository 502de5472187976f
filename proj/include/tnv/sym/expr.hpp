#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "tnv/sym/poly.hpp"
#include "tnv/sym/symbol.hpp"

namespace tnv::sym {

/// Exact scalar in canonical form num/den.
///
/// num and den are coprime integer polynomials, den carries no reducible
/// symbol (radicals and sines are rationalised away), every reducible symbol
/// appears in num with degree <= 1, and den has a positive leading term in
/// print order. Two Exprs are equal iff their canonical forms coincide.
class Expr {
 public:
  Expr();
  Expr(long c);  // NOLINT(google-explicit-constructor)
  explicit Expr(const mpq_class& q);
  explicit Expr(Symbol s);
  explicit Expr(const Poly& p);
  /// Canonicalises num/den; DivisionByZero when den is zero.
  static Expr fraction(const Poly& num, const Poly& den);
  static Expr rational(long num, long den);

  const Poly& num() const { return rep_->num; }
  const Poly& den() const { return rep_->den; }
  bool is_zero() const { return rep_->num.is_zero(); }
  bool is_one() const { return rep_->num.is_one() && rep_->den.is_one(); }
  bool is_constant() const { return rep_->num.is_constant() && rep_->den.is_constant(); }
  std::optional<mpq_class> rational_value() const;
  std::vector<SymbolId> variables() const;
  bool contains(SymbolId v) const { return num().contains(v) || den().contains(v); }

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr& operator/=(const Expr& o) { return *this = *this / o; }
  Expr pow(long k) const;
  Expr inverse() const;

  std::string str() const;
  std::size_t hash() const;
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Rep {
    Poly num;
    Poly den;
  };
  Expr(Poly num, Poly den);
  static Expr make(Poly num, Poly den);
  std::shared_ptr<const Rep> rep_;
};

Expr sin(Symbol coordinate);
Expr cos(Symbol coordinate);

/// Partial derivative with respect to a coordinate.
Expr diff(const Expr& e, Symbol x);

using Bindings = std::map<Symbol, Expr>;

/// Simultaneous substitution followed by canonicalisation.
///
/// Derivatives of bound formal functions follow automatically; an explicit
/// binding that disagrees raises InconsistentBinding. Radicals whose radicand
/// changes are re-rooted with sqrt_expr. Trig atoms follow a coordinate only
/// when it is renamed to another coordinate or set to zero.
Expr substitute(const Expr& e, const Bindings& bindings);

/// Replaces v^2 by `square` in an expression that is even in v; radicals
/// whose radicand mentions v are re-rooted.
Expr substitute_even(const Expr& e, Symbol v, const Expr& square);

/// Square root with the positive branch for extracted factors: integer and
/// monomial square content and perfect-square polynomials leave the root;
/// the remainder becomes a radical symbol, optionally named by `alias`.
Expr sqrt_expr(const Expr& e, std::string_view alias = {});

/// Zero test: the canonical form decides, and a numeric evaluation at random
/// rational points must agree or CanonicalizationMismatch is raised.
bool is_zero(const Expr& e, std::uint64_t seed = 0);

}  // namespace tnv::sym

template <>
struct std::hash<tnv::sym::Expr> {
  std::size_t operator()(const tnv::sym::Expr& e) const noexcept { return e.hash(); }
};
