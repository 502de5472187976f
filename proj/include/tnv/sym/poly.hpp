#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "tnv/sym/symbol.hpp"

namespace tnv::sym {

/// Sparse power product. Entries are sorted by symbol id; exponents are
/// strictly positive.
class Monomial {
 public:
  static constexpr unsigned kExpBits = 12;
  static constexpr std::uint32_t kExpMask = (1u << kExpBits) - 1;

  Monomial() = default;
  static Monomial of(SymbolId v, unsigned e = 1);

  std::size_t size() const { return packed_.size(); }
  bool empty() const { return packed_.empty(); }
  SymbolId var(std::size_t i) const { return packed_[i] >> kExpBits; }
  unsigned exp(std::size_t i) const { return packed_[i] & kExpMask; }
  unsigned degree(SymbolId v) const;
  unsigned total_degree() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// this / o, assuming o divides this.
  Monomial quotient(const Monomial& o) const;
  Monomial with_degree(SymbolId v, unsigned e) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  std::size_t hash() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  static std::uint32_t pack(SymbolId v, unsigned e);
  boost::container::small_vector<std::uint32_t, 5> packed_;
};

/// Lexicographic term order with lower symbol ids more significant.
int compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  mpz_class coef;
};

/// Multivariate polynomial with integer coefficients. Terms are kept in
/// strictly decreasing term order with non-zero coefficients, so equality
/// is structural.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  explicit Poly(const mpz_class& c);
  static Poly variable(Symbol s);
  static Poly term(Monomial m, mpz_class c);
  /// Sorts and merges arbitrary terms.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  const Term& leading() const { return terms_.front(); }
  mpz_class constant_value() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const mpz_class& c) const;
  Poly times(const Monomial& m, const mpz_class& c) const;
  Poly pow(unsigned k) const;

  /// Exact quotient when o divides this, otherwise nullopt.
  std::optional<Poly> divide_exact(const Poly& o) const;
  /// Divides every coefficient by c and every term by m; both must divide.
  Poly divide_content(const Monomial& m, const mpz_class& c) const;

  unsigned degree(SymbolId v) const;
  bool contains(SymbolId v) const;
  std::vector<SymbolId> variables() const;
  Poly partial(SymbolId v) const;
  std::vector<Poly> coefficients_in(SymbolId v) const;
  static Poly from_coefficients(SymbolId v, const std::vector<Poly>& coeffs);
  /// Replaces v by -v.
  Poly negate_odd(SymbolId v) const;

  mpz_class content() const;
  Monomial monomial_content() const;

  std::string str() const;
  /// Sign of the first term in print order; independent of symbol ids.
  int display_sign() const;
  std::size_t hash() const;
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor over Z[x1..xn]; result has positive leading
/// coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// gcd of the coefficients of p viewed as a polynomial in v.
Poly content_in(const Poly& p, SymbolId v);

/// Rewrites every reducible symbol to degree <= 1 using its relation.
Poly reduce_relations(const Poly& p);
bool needs_reduction(const Poly& p);

}  // namespace tnv::sym
