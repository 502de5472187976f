#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tnv/forms/diffform.hpp"
#include "tnv/sym/interval.hpp"
#include "tnv/sym/numeric.hpp"

namespace tnv::parse {

using sym::Expr;
using sym::Symbol;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Syntax tree of the plain-text math syntax, before any canonicalisation.
struct Node {
  enum class Kind { number, symbol, add, sub, mul, div, neg, pow, call, dform };

  Kind kind = Kind::number;
  mpq_class value;       // number
  std::string name;      // symbol, call, dform
  int primes = 0;        // symbol, call
  std::vector<NodePtr> args;

  /// Fully parenthesised text that parses back to the same tree.
  std::string str() const;
};

NodePtr number(const mpq_class& q);
NodePtr symbol(std::string name, int primes = 0);
NodePtr binary(Node::Kind k, NodePtr a, NodePtr b);
NodePtr negate(NodePtr a);
NodePtr call(std::string fn, NodePtr arg, int primes = 0);

/// Name resolution for evaluation. Identifiers not found here and not
/// coordinates of the chart become parameters.
struct Context {
  forms::ChartPtr chart;
  /// A prime on a bound name differentiates along this coordinate.
  Symbol prime_coordinate;
  std::map<std::string, Expr> names;

  /// Euler chart, primes along r, and A, B, R bound to formal functions of r.
  static Context standard();
};

NodePtr parse_tree(std::string_view text);

using Value = std::variant<Expr, forms::DiffForm, forms::SymTensor2>;
Value evaluate(const Node& n, const Context& ctx);

Expr parse_expr(std::string_view text, const Context& ctx = Context::standard());
/// Form literal such as "B(r)*(d psi + cos(theta) d phi)"; ^ between forms
/// is the wedge product.
forms::DiffForm parse_form(std::string_view text, const Context& ctx = Context::standard());
/// Line element such as "-A^2 dr^2 + B^2 (dpsi + cos(theta) dphi)^2"; a
/// product of two one-forms is their symmetrised product.
forms::SymTensor2 parse_metric(std::string_view text, const Context& ctx = Context::standard());

/// Interval evaluation straight from the tree, with no canonicalisation.
sym::Interval eval_tree(const Node& n, const sym::NumericPoint& point, const Context& ctx,
                        mpfr_prec_t bits = sym::default_precision());

}  // namespace tnv::parse
