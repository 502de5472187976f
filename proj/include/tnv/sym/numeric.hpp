#pragma once

#include <map>

#include <gmpxx.h>

#include "tnv/sym/expr.hpp"
#include "tnv/sym/interval.hpp"

namespace tnv::sym {

using NumericPoint = std::map<Symbol, Interval>;
using RationalPoint = std::map<Symbol, mpq_class>;

/// Interval precision from VERIFY_PRECISION_BITS, 128 when unset.
mpfr_prec_t default_precision();

/// Rigorous enclosure of e at the point. Trig atoms take their value from
/// the argument coordinate and radicals from their radicand; every other
/// symbol must be bound. DomainError on a radicand that may be negative or a
/// denominator enclosure containing zero.
Interval eval_numeric(const Expr& e, const NumericPoint& point, mpfr_prec_t bits);
Interval eval_numeric(const Expr& e, const RationalPoint& point, mpfr_prec_t bits);
Interval eval_numeric(const Poly& p, const NumericPoint& point, mpfr_prec_t bits);

/// Symbols a point must bind for e: coordinates, parameters and function
/// symbols, including those reached through trig arguments and radicands.
std::vector<Symbol> free_symbols(const Expr& e);

}  // namespace tnv::sym
