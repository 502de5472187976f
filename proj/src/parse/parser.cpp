#include "tnv/parse/parser.hpp"

#include <cctype>

#include "tnv/errors.hpp"
#include "tnv/forms/calculus.hpp"

namespace tnv::parse {

namespace {

struct Token {
  enum class Type { number, ident, prime, op, end };
  Type type = Type::end;
  mpq_class value;
  std::string text;
  char op = 0;
  std::size_t pos = 0;
};

// greek letters are accepted as spelled-out names
const std::pair<std::string_view, std::string_view> kUtf8Names[] = {
    {"\xCF\x88", "psi"}, {"\xCE\xB8", "theta"}, {"\xCF\x86", "phi"}, {"\xCF\x95", "phi"}};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::string digits;
      std::size_t frac = 0;
      bool dot = false;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || (s[i] == '.' && !dot))) {
        if (s[i] == '.') {
          dot = true;
        } else {
          digits += s[i];
          if (dot) ++frac;
        }
        ++i;
      }
      mpz_class den = 1;
      for (std::size_t k = 0; k < frac; ++k) den *= 10;
      t.type = Token::Type::number;
      t.value = mpq_class(mpz_class(digits), den);
      t.value.canonicalize();
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.type = Token::Type::ident;
      t.text = std::string(s.substr(i, j - i));
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (c == '\'') {
      t.type = Token::Type::prime;
      out.push_back(std::move(t));
      ++i;
      continue;
    }
    if (s.substr(i, 3) == "\xE2\x80\xB2") {
      t.type = Token::Type::prime;
      out.push_back(std::move(t));
      i += 3;
      continue;
    }
    bool matched = false;
    for (const auto& [utf, name] : kUtf8Names) {
      if (s.substr(i, utf.size()) == utf) {
        t.type = Token::Type::ident;
        t.text = std::string(name);
        out.push_back(std::move(t));
        i += utf.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("+-*/^(),").find(static_cast<char>(c)) != std::string_view::npos) {
      t.type = Token::Type::op;
      t.op = static_cast<char>(c);
      out.push_back(std::move(t));
      ++i;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "' at " + std::to_string(i));
  }
  Token end;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  NodePtr parse() {
    NodePtr n = sum();
    if (peek().type != Token::Type::end) fail("trailing input");
    return n;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_op(char c) const { return peek().type == Token::Type::op && peek().op == c; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(peek().pos));
  }
  void expect(char c) {
    if (!is_op(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  NodePtr sum() {
    NodePtr n = product();
    while (is_op('+') || is_op('-')) {
      char op = peek().op;
      ++pos_;
      n = binary(op == '+' ? Node::Kind::add : Node::Kind::sub, n, product());
    }
    return n;
  }

  bool starts_atom() const {
    return peek().type == Token::Type::number || peek().type == Token::Type::ident || is_op('(');
  }

  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (is_op('*') || is_op('/')) {
        char op = peek().op;
        ++pos_;
        n = binary(op == '*' ? Node::Kind::mul : Node::Kind::div, n, unary());
      } else if (starts_atom()) {
        n = binary(Node::Kind::mul, n, power());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (is_op('-')) {
      ++pos_;
      return negate(unary());
    }
    if (is_op('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (is_op('^')) {
      ++pos_;
      return binary(Node::Kind::pow, base, unary());
    }
    return base;
  }

  int primes() {
    int k = 0;
    while (peek().type == Token::Type::prime) {
      ++k;
      ++pos_;
    }
    return k;
  }

  NodePtr atom() {
    const Token& t = peek();
    if (t.type == Token::Type::number) {
      ++pos_;
      return number(t.value);
    }
    if (is_op('(')) {
      ++pos_;
      NodePtr n = sum();
      expect(')');
      return n;
    }
    if (t.type == Token::Type::ident) {
      std::string name = t.text;
      ++pos_;
      if (name == "d" && peek().type == Token::Type::ident) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::dform;
        n->name = peek().text;
        ++pos_;
        return n;
      }
      int k = primes();
      // name(...) is a call for the builtins and for name(coordinate);
      // otherwise a parenthesis after a name is juxtaposition
      bool builtin = name == "sin" || name == "cos" || name == "cot" || name == "csc" || name == "sqrt";
      bool single = pos_ + 2 < toks_.size() && toks_[pos_ + 1].type == Token::Type::ident &&
                    toks_[pos_ + 2].type == Token::Type::op && toks_[pos_ + 2].op == ')';
      if (is_op('(') && (builtin || single)) {
        ++pos_;
        NodePtr arg = sum();
        expect(')');
        return call(std::move(name), arg, k);
      }
      return symbol(std::move(name), k);
    }
    fail("expected an operand");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string rational_text(const mpq_class& q) {
  if (q.get_den() == 1 && q >= 0) return q.get_str();
  return "(" + q.get_num().get_str() + (q.get_den() == 1 ? "" : "/" + q.get_den().get_str()) + ")";
}

using forms::DiffForm;
using forms::SymTensor2;

std::optional<Symbol> chart_coordinate(const Context& ctx, const std::string& name) {
  for (Symbol c : ctx.chart->coords()) {
    if (c.name() == name) return c;
  }
  return std::nullopt;
}

Expr apply_primes(Expr e, int primes, const Context& ctx, const std::string& name) {
  if (primes == 0) return e;
  // a bare formal function walks its own derivative chain
  auto vars = e.variables();
  if (e.den().is_one() && vars.size() == 1 && Expr(Symbol(vars[0])) == e &&
      Symbol(vars[0]).kind() == sym::SymbolKind::function) {
    Symbol s(vars[0]);
    for (int i = 0; i < primes; ++i) s = s.derivative();
    return Expr(s);
  }
  if (!ctx.prime_coordinate.valid()) throw ParseError("no prime coordinate for '" + name + "'");
  for (int i = 0; i < primes; ++i) e = sym::diff(e, ctx.prime_coordinate);
  return e;
}

Expr resolve_symbol(const Node& n, const Context& ctx) {
  if (auto it = ctx.names.find(n.name); it != ctx.names.end()) return apply_primes(it->second, n.primes, ctx, n.name);
  if (auto c = chart_coordinate(ctx, n.name)) {
    if (n.primes != 0) throw ParseError("prime on coordinate '" + n.name + "'");
    return Expr(*c);
  }
  Symbol s;
  if (auto known = Symbol::lookup(n.name)) {
    s = *known;
  } else {
    s = Symbol::parameter(n.name);
  }
  if (n.primes != 0) {
    if (s.kind() != sym::SymbolKind::function) throw ParseError("prime on non-function '" + n.name + "'");
    for (int i = 0; i < n.primes; ++i) s = s.derivative();
  }
  return Expr(s);
}

Symbol as_coordinate(const Expr& e, const std::string& fn) {
  auto vars = e.variables();
  if (vars.size() == 1 && e == Expr(Symbol(vars[0])) && Symbol(vars[0]).kind() == sym::SymbolKind::coordinate) {
    return Symbol(vars[0]);
  }
  throw ParseError(fn + " expects a coordinate argument");
}

const char* kind_name(const Value& v) {
  switch (v.index()) {
    case 0:
      return "scalar";
    case 1:
      return "form";
    default:
      return "tensor";
  }
}

Value add_values(const Value& a, const Value& b, bool subtract) {
  if (a.index() != b.index()) {
    throw ParseError(std::string("cannot add a ") + kind_name(a) + " and a " + kind_name(b));
  }
  if (const auto* x = std::get_if<Expr>(&a)) {
    const auto& y = std::get<Expr>(b);
    return subtract ? *x - y : *x + y;
  }
  if (const auto* x = std::get_if<DiffForm>(&a)) {
    const auto& y = std::get<DiffForm>(b);
    return subtract ? *x - y : *x + y;
  }
  const auto& x = std::get<SymTensor2>(a);
  const auto& y = std::get<SymTensor2>(b);
  return subtract ? x - y : x + y;
}

Value scale(const Expr& c, const Value& v) {
  if (const auto* x = std::get_if<Expr>(&v)) return c * *x;
  if (const auto* x = std::get_if<DiffForm>(&v)) return c * *x;
  return c * std::get<SymTensor2>(v);
}

Value mul_values(const Value& a, const Value& b) {
  if (const auto* x = std::get_if<Expr>(&a)) return scale(*x, b);
  if (const auto* y = std::get_if<Expr>(&b)) return scale(*y, a);
  const auto* x = std::get_if<DiffForm>(&a);
  const auto* y = std::get_if<DiffForm>(&b);
  if (x != nullptr && y != nullptr && x->degree() == 1 && y->degree() == 1) return forms::sym_product(*x, *y);
  throw ParseError(std::string("cannot multiply a ") + kind_name(a) + " by a " + kind_name(b) +
                   " (use ^ for the wedge product)");
}

long integer_exponent(const Value& v) {
  const auto* e = std::get_if<Expr>(&v);
  if (e == nullptr) throw ParseError("exponent must be a number");
  auto q = e->rational_value();
  if (!q || q->get_den() != 1 || !q->get_num().fits_slong_p()) throw ParseError("exponent must be an integer");
  return q->get_num().get_si();
}

}  // namespace

NodePtr number(const mpq_class& q) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::number;
  n->value = q;
  return n;
}

NodePtr symbol(std::string name, int primes) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::symbol;
  n->name = std::move(name);
  n->primes = primes;
  return n;
}

NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = {std::move(a), std::move(b)};
  return n;
}

NodePtr negate(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::neg;
  n->args = {std::move(a)};
  return n;
}

NodePtr call(std::string fn, NodePtr arg, int primes) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::call;
  n->name = std::move(fn);
  n->primes = primes;
  n->args = {std::move(arg)};
  return n;
}

std::string Node::str() const {
  auto bin = [&](const char* op) { return "(" + args[0]->str() + op + args[1]->str() + ")"; };
  switch (kind) {
    case Kind::number:
      return rational_text(value);
    case Kind::symbol:
      return name + std::string(static_cast<std::size_t>(primes), '\'');
    case Kind::add:
      return bin(" + ");
    case Kind::sub:
      return bin(" - ");
    case Kind::mul:
      return bin("*");
    case Kind::div:
      return bin("/");
    case Kind::pow:
      return bin("^");
    case Kind::neg:
      return "(-" + args[0]->str() + ")";
    case Kind::call:
      return name + std::string(static_cast<std::size_t>(primes), '\'') + "(" + args[0]->str() + ")";
    case Kind::dform:
      return "(d " + name + ")";
  }
  return "";
}

Context Context::standard() {
  Context c;
  c.chart = forms::Chart::euler();
  Symbol r = forms::Coords::r();
  c.prime_coordinate = r;
  for (const char* f : {"A", "B", "R"}) c.names.emplace(f, Expr(Symbol::function(f, r)));
  return c;
}

NodePtr parse_tree(std::string_view text) { return Parser(text).parse(); }

Value evaluate(const Node& n, const Context& ctx) {
  switch (n.kind) {
    case Node::Kind::number:
      return Expr(n.value);
    case Node::Kind::symbol: {
      // dpsi style differentials, unless the name is bound
      if (ctx.names.count(n.name) == 0 && !chart_coordinate(ctx, n.name) && n.name.size() > 1 && n.name[0] == 'd' &&
          n.primes == 0) {
        if (auto c = chart_coordinate(ctx, n.name.substr(1))) return DiffForm::differential(ctx.chart, *c);
      }
      return resolve_symbol(n, ctx);
    }
    case Node::Kind::dform: {
      auto c = chart_coordinate(ctx, n.name);
      if (!c) throw ParseError("'" + n.name + "' is not a coordinate of the chart");
      return DiffForm::differential(ctx.chart, *c);
    }
    case Node::Kind::add:
    case Node::Kind::sub:
      return add_values(evaluate(*n.args[0], ctx), evaluate(*n.args[1], ctx), n.kind == Node::Kind::sub);
    case Node::Kind::neg:
      return scale(Expr(-1), evaluate(*n.args[0], ctx));
    case Node::Kind::mul:
      return mul_values(evaluate(*n.args[0], ctx), evaluate(*n.args[1], ctx));
    case Node::Kind::div: {
      Value a = evaluate(*n.args[0], ctx);
      Value b = evaluate(*n.args[1], ctx);
      const auto* d = std::get_if<Expr>(&b);
      if (d == nullptr) throw ParseError("division by a form");
      return scale(d->inverse(), a);
    }
    case Node::Kind::pow: {
      Value a = evaluate(*n.args[0], ctx);
      Value b = evaluate(*n.args[1], ctx);
      if (const auto* fa = std::get_if<DiffForm>(&a)) {
        if (const auto* fb = std::get_if<DiffForm>(&b)) return forms::wedge(*fa, *fb);
        if (integer_exponent(b) == 2 && fa->degree() == 1) return forms::square(*fa);
        throw ParseError("a form can only be squared or wedged");
      }
      const auto* ea = std::get_if<Expr>(&a);
      if (ea == nullptr) throw ParseError("power of a tensor");
      return ea->pow(integer_exponent(b));
    }
    case Node::Kind::call: {
      Value av = evaluate(*n.args[0], ctx);
      const auto* arg = std::get_if<Expr>(&av);
      if (arg == nullptr) throw ParseError(n.name + " of a form");
      const std::string& fn = n.name;
      if (fn == "sin" || fn == "cos" || fn == "cot" || fn == "csc" || fn == "sqrt") {
        if (n.primes != 0) throw ParseError("prime on " + fn);
        if (fn == "sqrt") return sym::sqrt_expr(*arg);
        if (arg->is_zero()) {
          if (fn == "sin") return Expr(0);
          if (fn == "cos") return Expr(1);
          throw DivisionByZero(fn + "(0)");
        }
        Symbol x = as_coordinate(*arg, fn);
        if (fn == "sin") return sym::sin(x);
        if (fn == "cos") return sym::cos(x);
        if (fn == "cot") return sym::cos(x) / sym::sin(x);
        return sym::sin(x).inverse();
      }
      if (auto it = ctx.names.find(fn); it != ctx.names.end()) {
        as_coordinate(*arg, fn);
        return apply_primes(it->second, n.primes, ctx, fn);
      }
      Symbol f = Symbol::function(fn, as_coordinate(*arg, fn));
      for (int i = 0; i < n.primes; ++i) f = f.derivative();
      return Expr(f);
    }
  }
  throw ParseError("malformed tree");
}

Expr parse_expr(std::string_view text, const Context& ctx) {
  Value v = evaluate(*parse_tree(text), ctx);
  if (auto* e = std::get_if<Expr>(&v)) return *e;
  throw ParseError("expected a scalar expression, got a " + std::string(kind_name(v)));
}

forms::DiffForm parse_form(std::string_view text, const Context& ctx) {
  Value v = evaluate(*parse_tree(text), ctx);
  if (auto* f = std::get_if<DiffForm>(&v)) return *f;
  if (auto* e = std::get_if<Expr>(&v)) return DiffForm::scalar(ctx.chart, *e);
  throw ParseError("expected a form, got a tensor");
}

forms::SymTensor2 parse_metric(std::string_view text, const Context& ctx) {
  Value v = evaluate(*parse_tree(text), ctx);
  if (auto* g = std::get_if<SymTensor2>(&v)) return *g;
  throw ParseError("expected a line element, got a " + std::string(kind_name(v)));
}

sym::Interval eval_tree(const Node& n, const sym::NumericPoint& point, const Context& ctx, mpfr_prec_t bits) {
  auto sub = [&](std::size_t i) { return eval_tree(*n.args[i], point, ctx, bits); };
  switch (n.kind) {
    case Node::Kind::number:
      return sym::Interval(n.value, bits);
    case Node::Kind::symbol:
      return sym::eval_numeric(resolve_symbol(n, ctx), point, bits);
    case Node::Kind::dform:
      throw ParseError("numeric evaluation of a form");
    case Node::Kind::add:
      return sub(0) + sub(1);
    case Node::Kind::sub:
      return sub(0) - sub(1);
    case Node::Kind::mul:
      return sub(0) * sub(1);
    case Node::Kind::div:
      return sub(0) / sub(1);
    case Node::Kind::neg:
      return -sub(0);
    case Node::Kind::pow: {
      long k = integer_exponent(evaluate(*n.args[1], ctx));
      sym::Interval b = sub(0);
      if (k >= 0) return b.pow(static_cast<unsigned>(k));
      return sym::Interval(mpq_class(1), bits) / b.pow(static_cast<unsigned>(-k));
    }
    case Node::Kind::call: {
      const std::string& fn = n.name;
      if (fn == "sin" || fn == "cos" || fn == "cot" || fn == "csc" || fn == "sqrt") {
        sym::Interval x = sub(0);
        if (fn == "sqrt") {
          if (mpfr_sgn(x.lo()) < 0) throw DomainError("sqrt of a possibly negative value");
          return x.sqrt();
        }
        if (fn == "sin") return x.sin();
        if (fn == "cos") return x.cos();
        if (fn == "cot") return x.cos() / x.sin();
        return sym::Interval(mpq_class(1), bits) / x.sin();
      }
      return sym::eval_numeric(std::get<Expr>(evaluate(n, ctx)), point, bits);
    }
  }
  throw ParseError("malformed tree");
}

}  // namespace tnv::parse
