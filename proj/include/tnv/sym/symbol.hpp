#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tnv::sym {

class Poly;

enum class SymbolKind : std::uint8_t {
  coordinate,
  parameter,
  function,  // formal function of one coordinate, or one of its derivatives
  radical,   // s with s^2 = radicand
  trig,      // sin(x) or cos(x) of a coordinate x
};

enum class TrigFn : std::uint8_t { sin, cos };

using SymbolId = std::uint32_t;
inline constexpr SymbolId kNoSymbol = ~SymbolId{0};

/// Immutable description of an interned symbol.
///
/// A symbol is "reducible" when it carries a radicand: radicals s with
/// s^2 = radicand, and sin(x) with sin(x)^2 = 1 - cos(x)^2. The canonical
/// form keeps every reducible symbol at degree <= 1 in numerators and
/// removes it from denominators entirely.
struct SymbolInfo {
  SymbolId id = kNoSymbol;
  std::string name;
  SymbolKind kind = SymbolKind::parameter;

  // functions: base is the underived function, order counts primes
  SymbolId base = kNoSymbol;
  int order = 0;
  SymbolId next = kNoSymbol;  // derivative symbol, kNoSymbol at the cap
  SymbolId argument = kNoSymbol;

  // trig atoms
  TrigFn trig = TrigFn::sin;
  SymbolId partner = kNoSymbol;

  std::shared_ptr<const Poly> radicand;
  int level = 0;
};

/// Handle to an interned symbol. Cheap to copy; ordering follows creation.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(SymbolId id) : id_(id) {}

  static Symbol coordinate(std::string_view name);
  static Symbol parameter(std::string_view name);
  /// Formal function of `argument`; its first and second derivatives are
  /// created alongside and reached through derivative().
  static Symbol function(std::string_view name, Symbol argument);
  static Symbol sin_of(Symbol coordinate);
  static Symbol cos_of(Symbol coordinate);
  /// Radical with s^2 = radicand. Interned by radicand; the alias only names
  /// the symbol the first time it is created.
  static Symbol radical(const Poly& radicand, std::string_view alias = {});
  static std::optional<Symbol> lookup(std::string_view name);

  SymbolId id() const { return id_; }
  bool valid() const { return id_ != kNoSymbol; }
  const SymbolInfo& info() const;
  const std::string& name() const { return info().name; }
  SymbolKind kind() const { return info().kind; }
  bool reducible() const { return info().radicand != nullptr; }
  const Poly& radicand() const;

  /// Next derivative in the chain; DerivativeOrderError past the second.
  Symbol derivative() const;
  Symbol base_function() const { return Symbol(info().base); }
  int derivative_order() const { return info().order; }
  Symbol argument() const { return Symbol(info().argument); }

  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  SymbolId id_ = kNoSymbol;
};

const SymbolInfo& symbol_info(SymbolId id);

/// Name ordering used for deterministic printing.
bool name_less(SymbolId a, SymbolId b);

}  // namespace tnv::sym

template <>
struct std::hash<tnv::sym::Symbol> {
  std::size_t operator()(tnv::sym::Symbol s) const noexcept { return s.id(); }
};
