#include "cgm/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cgm/error.hpp"

namespace cgm {

std::vector<Token> tokenize(const std::string& text) {
  static const std::vector<std::string> multi = {"<-", "<~", "->", "=>", ":=", "==", "!=", "<=",
                                                 ">=", "&&", "||", ".."};
  static const std::string single = "{}()[];:,@+-*/%<>!=~|";
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
                                 text[j] == '\'')) {
        ++j;
      }
      out.push_back({Token::Kind::Ident, text.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Int, text.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const auto& m : multi) {
      if (text.compare(i, m.size(), m) == 0) {
        out.push_back({Token::Kind::Symbol, m, l, cl});
        advance(m.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (single.find(c) != std::string::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::at(const std::string& s) const {
  const auto& t = peek();
  return t.kind != Token::Kind::End && t.kind != Token::Kind::Int && t.text == s;
}

bool TokenStream::accept(const std::string& s) {
  if (!at(s)) return false;
  next();
  return true;
}

Token TokenStream::expect(const std::string& s) {
  if (!at(s)) {
    const auto& t = peek();
    error("expected '" + s + "' but found " + (t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'"));
  }
  return next();
}

std::string TokenStream::expect_ident() {
  if (peek().kind != Token::Kind::Ident) error("expected an identifier");
  return next().text;
}

std::int64_t TokenStream::expect_int() {
  bool negative = accept("-");
  if (peek().kind != Token::Kind::Int) error("expected an integer");
  auto text = next().text;
  std::int64_t v = 0;
  try {
    v = std::stoll(text);
  } catch (const std::out_of_range&) {
    error("integer literal out of range");
  }
  return negative ? -v : v;
}

Rational TokenStream::expect_rational() {
  bool negative = accept("-");
  if (peek().kind != Token::Kind::Int) error("expected a number");
  Rational r(boost::multiprecision::cpp_int(next().text));
  if (accept("/")) {
    if (peek().kind != Token::Kind::Int) error("expected a denominator");
    boost::multiprecision::cpp_int d(next().text);
    if (d == 0) error("zero denominator");
    r /= Rational(d);
  }
  return negative ? -r : r;
}

void TokenStream::error(const std::string& message) const {
  const auto& t = peek();
  throw ParseError(t.line, t.column, message);
}

// ---------------------------------------------------------------------------

struct Expr::Node {
  Op op;
  std::int64_t number = 0;
  std::string name;
  std::vector<Expr> kids;
};

Expr Expr::num(std::int64_t n) {
  auto node = std::make_shared<Node>();
  node->op = Op::Num;
  node->number = n;
  return Expr(node);
}

Expr Expr::boolean(bool b) {
  auto node = std::make_shared<Node>();
  node->op = Op::Bool;
  node->number = b ? 1 : 0;
  return Expr(node);
}

Expr Expr::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->op = Op::Var;
  node->name = std::move(name);
  return Expr(node);
}

Expr Expr::unary(Op op, Expr operand) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->kids = {std::move(operand)};
  return Expr(node);
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->kids = {std::move(lhs), std::move(rhs)};
  return Expr(node);
}

Expr::Op Expr::op() const { return node_->op; }
std::int64_t Expr::number() const { return node_->number; }
bool Expr::truth() const { return node_->number != 0; }
const std::string& Expr::name() const { return node_->name; }
const Expr& Expr::lhs() const { return node_->kids.at(0); }
const Expr& Expr::rhs() const { return node_->kids.at(1); }

namespace {

std::int64_t want_int(const Value& v, const Expr& e) {
  if (!v.is(Value::Kind::Int)) {
    throw Error(ErrorCode::RuntimeError, "expected an integer in " + e.to_string() + ", got " + v.to_string());
  }
  return v.as_int();
}

bool want_bool(const Value& v, const Expr& e) {
  if (!v.is(Value::Kind::Bool)) {
    throw Error(ErrorCode::RuntimeError, "expected a boolean in " + e.to_string() + ", got " + v.to_string());
  }
  return v.as_bool();
}

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Or: return 1;
    case Expr::Op::And: return 2;
    case Expr::Op::Eq: case Expr::Op::Ne: case Expr::Op::Lt:
    case Expr::Op::Le: case Expr::Op::Gt: case Expr::Op::Ge: return 3;
    case Expr::Op::Add: case Expr::Op::Sub: return 4;
    case Expr::Op::Mul: case Expr::Op::Div: case Expr::Op::Mod: return 5;
    case Expr::Op::Neg: case Expr::Op::Not: return 6;
    default: return 7;
  }
}

const char* symbol(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Div: return "/";
    case Expr::Op::Mod: return "%";
    case Expr::Op::Eq: return "==";
    case Expr::Op::Ne: return "!=";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::And: return "&&";
    case Expr::Op::Or: return "||";
    case Expr::Op::Neg: return "-";
    case Expr::Op::Not: return "!";
    default: return "?";
  }
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.op()) {
    case Expr::Op::Var: out.insert(e.name()); return;
    case Expr::Op::Num: case Expr::Op::Bool: return;
    case Expr::Op::Neg: case Expr::Op::Not: collect_vars(e.lhs(), out); return;
    default:
      collect_vars(e.lhs(), out);
      collect_vars(e.rhs(), out);
  }
}

}  // namespace

Value Expr::eval(const Lookup& lookup) const {
  switch (op()) {
    case Op::Num: return Value::integer(number());
    case Op::Bool: return Value::boolean(truth());
    case Op::Var: {
      auto v = lookup(name());
      if (!v) throw Error(ErrorCode::RuntimeError, "unbound variable " + name());
      return *v;
    }
    case Op::Neg: return Value::integer(-want_int(lhs().eval(lookup), *this));
    case Op::Not: return Value::boolean(!want_bool(lhs().eval(lookup), *this));
    case Op::And: {
      if (!want_bool(lhs().eval(lookup), *this)) return Value::boolean(false);
      return Value::boolean(want_bool(rhs().eval(lookup), *this));
    }
    case Op::Or: {
      if (want_bool(lhs().eval(lookup), *this)) return Value::boolean(true);
      return Value::boolean(want_bool(rhs().eval(lookup), *this));
    }
    case Op::Eq: return Value::boolean(lhs().eval(lookup) == rhs().eval(lookup));
    case Op::Ne: return Value::boolean(lhs().eval(lookup) != rhs().eval(lookup));
    default: break;
  }
  auto a = want_int(lhs().eval(lookup), *this);
  auto b = want_int(rhs().eval(lookup), *this);
  switch (op()) {
    case Op::Add: return Value::integer(a + b);
    case Op::Sub: return Value::integer(a - b);
    case Op::Mul: return Value::integer(a * b);
    case Op::Div:
    case Op::Mod: {
      if (b == 0) throw Error(ErrorCode::RuntimeError, "division by zero in " + to_string());
      // Floor semantics so that modular arithmetic stays in range.
      std::int64_t q = a / b, r = a % b;
      if (r != 0 && ((r < 0) != (b < 0))) {
        --q;
        r += b;
      }
      return Value::integer(op() == Op::Div ? q : r);
    }
    case Op::Lt: return Value::boolean(a < b);
    case Op::Le: return Value::boolean(a <= b);
    case Op::Gt: return Value::boolean(a > b);
    case Op::Ge: return Value::boolean(a >= b);
    default: break;
  }
  throw Error(ErrorCode::RuntimeError, "bad expression");
}

bool Expr::holds(const Lookup& lookup) const { return want_bool(eval(lookup), *this); }

std::vector<std::string> Expr::free_vars() const {
  std::set<std::string> s;
  collect_vars(*this, s);
  return {s.begin(), s.end()};
}

Expr Expr::subst(const std::string& var, const Expr& by) const {
  switch (op()) {
    case Op::Num:
    case Op::Bool: return *this;
    case Op::Var: return name() == var ? by : *this;
    case Op::Neg:
    case Op::Not: return unary(op(), lhs().subst(var, by));
    default: return binary(op(), lhs().subst(var, by), rhs().subst(var, by));
  }
}

std::string Expr::to_string() const {
  switch (op()) {
    case Op::Num: return std::to_string(number());
    case Op::Bool: return truth() ? "true" : "false";
    case Op::Var: return name();
    case Op::Neg:
    case Op::Not: {
      auto inner = lhs().to_string();
      if (precedence(lhs().op()) < precedence(op())) inner = "(" + inner + ")";
      return std::string(symbol(op())) + inner;
    }
    default: break;
  }
  int p = precedence(op());
  auto l = lhs().to_string();
  auto r = rhs().to_string();
  if (precedence(lhs().op()) < p) l = "(" + l + ")";
  // Operators are left-associative; a right operand at equal precedence needs parentheses.
  if (precedence(rhs().op()) <= p) r = "(" + r + ")";
  return l + " " + symbol(op()) + " " + r;
}

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (op() != other.op() || number() != other.number() || name() != other.name()) return false;
  if (node_->kids.size() != other.node_->kids.size()) return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i) {
    if (!(node_->kids[i] == other.node_->kids[i])) return false;
  }
  return true;
}

namespace {

Expr parse_level(TokenStream& ts, int level);

Expr parse_atom(TokenStream& ts) {
  const auto& t = ts.peek();
  if (t.kind == Token::Kind::Int) return Expr::num(ts.expect_int());
  if (ts.accept("(")) {
    auto e = parse_level(ts, 1);
    ts.expect(")");
    return e;
  }
  if (ts.accept("-")) return Expr::unary(Expr::Op::Neg, parse_atom(ts));
  if (ts.accept("!") || ts.accept("not")) return Expr::unary(Expr::Op::Not, parse_level(ts, 3));
  if (ts.accept("true")) return Expr::boolean(true);
  if (ts.accept("false")) return Expr::boolean(false);
  if (t.kind == Token::Kind::Ident) return Expr::var(ts.next().text);
  ts.error("expected an expression");
}

std::optional<Expr::Op> binary_at(const TokenStream& ts, int level) {
  using Op = Expr::Op;
  static const std::vector<std::vector<std::pair<std::string, Op>>> table = {
      {},
      {{"||", Op::Or}, {"or", Op::Or}},
      {{"&&", Op::And}, {"and", Op::And}},
      {{"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt}},
      {{"+", Op::Add}, {"-", Op::Sub}},
      {{"*", Op::Mul}, {"/", Op::Div}, {"%", Op::Mod}},
  };
  for (const auto& [s, op] : table[level]) {
    if (ts.at(s)) return op;
  }
  return std::nullopt;
}

Expr parse_level(TokenStream& ts, int level) {
  if (level > 5) return parse_atom(ts);
  auto lhs = parse_level(ts, level + 1);
  while (auto op = binary_at(ts, level)) {
    ts.next();
    auto rhs = parse_level(ts, level + 1);
    lhs = Expr::binary(*op, lhs, rhs);
    if (level == 3 && binary_at(ts, 3)) ts.error("comparisons do not chain");
  }
  return lhs;
}

}  // namespace

Expr parse_expr(TokenStream& ts) { return parse_level(ts, 1); }

Expr parse_expr(const std::string& text) {
  TokenStream ts(tokenize(text));
  auto e = parse_expr(ts);
  if (!ts.at_end()) ts.error("unexpected trailing input");
  return e;
}

}  // namespace cgm
