#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cgm/value.hpp"

namespace cgm {

struct Token {
  enum class Kind { Ident, Int, Symbol, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

/// Tokenizer shared by every text format. `#` starts a line comment.
std::vector<Token> tokenize(const std::string& text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool at(const std::string& symbol_or_word) const;
  bool accept(const std::string& symbol_or_word);
  Token expect(const std::string& symbol_or_word);
  std::string expect_ident();
  std::int64_t expect_int();
  /// `n` or `n/d`, with an optional leading minus.
  Rational expect_rational();
  [[noreturn]] void error(const std::string& message) const;

  std::size_t mark() const { return pos_; }
  void reset(std::size_t mark) { pos_ = mark; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Integer/boolean expressions over named variables. Used for program
/// arithmetic and for pre/post-condition formulas.
class Expr {
 public:
  enum class Op { Num, Bool, Var, Neg, Not, Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

  static Expr num(std::int64_t n);
  static Expr boolean(bool b);
  static Expr var(std::string name);
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  Op op() const;
  std::int64_t number() const;
  bool truth() const;
  const std::string& name() const;
  const Expr& lhs() const;
  const Expr& rhs() const;

  using Lookup = std::function<std::optional<Value>(const std::string&)>;
  Value eval(const Lookup& lookup) const;
  bool holds(const Lookup& lookup) const;

  std::vector<std::string> free_vars() const;
  /// Replaces every occurrence of the variable `name` by `by`.
  Expr subst(const std::string& name, const Expr& by) const;
  std::string to_string() const;

  bool operator==(const Expr& other) const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse_expr(TokenStream& ts);
Expr parse_expr(const std::string& text);

}  // namespace cgm
