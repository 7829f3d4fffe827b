#include <map>
#include <set>

#include "cgm/error.hpp"
#include "cgm/metalang.hpp"

namespace cgm {

namespace {

class AhlParser {
 public:
  explicit AhlParser(const std::string& text) : ts_(tokenize(text)) {}

  AhlScript parse() {
    AhlScript s;
    while (ts_.accept("var")) {
      VarDecl d;
      auto tok = ts_.peek();
      d.name = ts_.expect_ident();
      if (declared_.count(d.name)) throw ParseError(tok.line, tok.column, "variable " + d.name + " declared twice");
      ts_.expect(":");
      ts_.expect("int");
      ts_.expect("[");
      d.lo = ts_.expect_int();
      ts_.expect("..");
      d.hi = ts_.expect_int();
      ts_.expect("]");
      if (d.hi < d.lo) throw ParseError(tok.line, tok.column, "empty range for " + d.name);
      declared_.insert(d.name);
      s.vars.push_back(d);
    }
    if (s.vars.empty()) ts_.error("declare at least one variable");
    s.root = derivation();
    if (!ts_.at_end()) ts_.error("unexpected text after the derivation");
    return s;
  }

 private:
  std::string variable() {
    auto tok = ts_.peek();
    auto name = ts_.expect_ident();
    if (!declared_.count(name)) throw ParseError(tok.line, tok.column, "undeclared variable " + name);
    return name;
  }

  Expr formula() {
    auto tok = ts_.peek();
    auto e = parse_expr(ts_);
    for (const auto& v : e.free_vars()) {
      if (!declared_.count(v)) throw ParseError(tok.line, tok.column, "undeclared variable " + v);
    }
    return e;
  }

  void conclusion(Derivation& d) {
    if (ts_.accept("bound")) {
      auto tok = ts_.peek();
      d.beta = ts_.expect_rational();
      if (*d.beta < 0 || *d.beta > 1) throw ParseError(tok.line, tok.column, "a bound must lie in [0, 1]");
    }
    if (ts_.accept("pre")) d.pre = formula();
    if (ts_.accept("post")) d.post = formula();
  }

  void require(const Derivation& d, const std::string& rule) {
    if (!d.beta || !d.pre || !d.post) {
      throw ParseError(d.line, 1, rule + " needs bound, pre and post");
    }
  }

  void sample_range(Derivation& d) {
    ts_.expect("uniform");
    ts_.expect("(");
    d.lo = ts_.expect_int();
    ts_.expect(",");
    d.hi = ts_.expect_int();
    ts_.expect(")");
    conclusion(d);
    require(d, "sample");
  }

  Derivation derivation() {
    Derivation d;
    auto tok = ts_.peek();
    d.line = tok.line;
    bool bare = ts_.peek().kind == Token::Kind::Ident && (ts_.peek(1).text == "<~" || ts_.peek(1).text == ":=");
    if (bare && ts_.peek(1).text == ":=") {
      d.rule = Derivation::Rule::Assign;
      d.var = variable();
      ts_.expect(":=");
      d.expr = formula();
      conclusion(d);
      if (!d.post) throw ParseError(tok.line, tok.column, "assign needs post");
    } else if (bare) {
      d.rule = Derivation::Rule::Sample;
      d.var = variable();
      ts_.expect("<~");
      sample_range(d);
    } else if (ts_.accept("skip")) {
      d.rule = Derivation::Rule::Skip;
      conclusion(d);
      if (!d.pre) throw ParseError(tok.line, tok.column, "skip needs pre");
    } else if (ts_.accept("assign")) {
      d.rule = Derivation::Rule::Assign;
      d.var = variable();
      ts_.expect(":=");
      d.expr = formula();
      conclusion(d);
      if (!d.post) throw ParseError(tok.line, tok.column, "assign needs post");
    } else if (ts_.accept("sample")) {
      d.rule = Derivation::Rule::Sample;
      d.var = variable();
      sample_range(d);
    } else if (ts_.accept("seq")) {
      d.rule = Derivation::Rule::Seq;
      ts_.expect("{");
      d.premises.push_back(derivation());
      while (ts_.accept(";") && !ts_.at("}")) d.premises.push_back(derivation());
      ts_.expect("}");
      conclusion(d);
    } else if (ts_.accept("weak")) {
      d.rule = Derivation::Rule::Weak;
      ts_.expect("{");
      d.premises.push_back(derivation());
      ts_.expect("}");
      conclusion(d);
      require(d, "weak");
    } else {
      ts_.error("expected skip, assign, sample, seq or weak");
    }
    return d;
  }

  TokenStream ts_;
  std::set<std::string> declared_;
};

const char* rule_name(Derivation::Rule r) {
  switch (r) {
    case Derivation::Rule::Skip: return "skip";
    case Derivation::Rule::Assign: return "assign";
    case Derivation::Rule::Sample: return "sample";
    case Derivation::Rule::Seq: return "seq";
    case Derivation::Rule::Weak: return "weak";
  }
  return "?";
}

std::string at_line(const Derivation& d) { return "line " + std::to_string(d.line) + ": "; }

void must_match(const Derivation& d, const char* what, const Expr& declared, const Expr& derived) {
  if (!(declared == derived)) {
    throw Error(ErrorCode::RuleMismatch, at_line(d) + rule_name(d.rule) + " " + what + " is " + declared.to_string() +
                                             " but the rule gives " + derived.to_string());
  }
}

class Checker {
 public:
  explicit Checker(const AhlScript& s) : a_(ahl_instance(s.vars)) {}

  GradedComputation visit(const Derivation& d, int depth) {
    auto slot = nodes.size();
    nodes.push_back({rule_name(d.rule), d.line, depth, 0, "", "", 0, false});
    auto c = build(d, depth);
    auto pre = ahl_pre(c.index), post = ahl_post(c.index);
    auto beta = ahl_beta(c.index);
    auto failure = a_.failure(c.payload, pre, post);
    auto& node = nodes[slot];
    node.beta = beta;
    node.pre = pre.to_string();
    node.post = post.to_string();
    node.failure = failure.probability;
    node.ok = failure.probability <= beta;
    if (!node.ok) {
      std::string witness;
      if (failure.worst_state) witness = " from " + a_.states->render(*failure.worst_state);
      throw Error(ErrorCode::BoundViolation, at_line(d) + rule_name(d.rule) + " fails post with probability " +
                                                 rational_to_string(failure.probability) + witness + ", above " +
                                                 rational_to_string(beta));
    }
    return c;
  }

  std::vector<AhlNode> nodes;

 private:
  GradedComputation build(const Derivation& d, int depth) {
    switch (d.rule) {
      case Derivation::Rule::Skip: {
        if (d.post) must_match(d, "post", *d.post, *d.pre);
        zero_bound(d);
        return a_.skip(*d.pre);
      }
      case Derivation::Rule::Assign: {
        auto c = a_.assign(d.var, *d.expr, *d.post);
        if (d.pre) must_match(d, "pre", *d.pre, ahl_pre(c.index));
        zero_bound(d);
        return c;
      }
      case Derivation::Rule::Sample:
        return a_.sample_uniform(d.var, d.lo, d.hi, *d.beta, *d.pre, *d.post);
      case Derivation::Rule::Seq: {
        auto acc = visit(d.premises[0], depth + 1);
        for (std::size_t i = 1; i < d.premises.size(); ++i) {
          auto next = visit(d.premises[i], depth + 1);
          auto mid = ahl_post(acc.index), want = ahl_pre(next.index);
          if (!(mid == want)) {
            throw Error(ErrorCode::RuleMismatch, at_line(d.premises[i]) + "seq step expects pre " + mid.to_string() +
                                                     " but has " + want.to_string());
          }
          acc = cgm::bind(a_.monad.base, acc, next.index, [&](const Value&) { return next; });
        }
        if (d.pre) must_match(d, "pre", *d.pre, ahl_pre(acc.index));
        if (d.post) must_match(d, "post", *d.post, ahl_post(acc.index));
        if (d.beta && *d.beta != ahl_beta(acc.index)) {
          throw Error(ErrorCode::RuleMismatch, at_line(d) + "seq bound is " + rational_to_string(*d.beta) +
                                                   " but the premises add up to " +
                                                   rational_to_string(ahl_beta(acc.index)) + "; use weak to loosen it");
        }
        return acc;
      }
      case Derivation::Rule::Weak: {
        auto inner = visit(d.premises[0], depth + 1);
        auto beta = ahl_beta(inner.index);
        if (beta > *d.beta) {
          throw Error(ErrorCode::RuleMismatch, at_line(d) + "weak cannot tighten bound " + rational_to_string(beta) +
                                                   " to " + rational_to_string(*d.beta));
        }
        auto p = ahl_pre(inner.index), q = ahl_post(inner.index);
        implication(d, *d.pre, p);
        implication(d, q, *d.post);
        const auto& base = a_.monad.base;
        auto into = ahl_index(0, *d.pre, p), out = ahl_index(0, q, *d.post);
        auto entered = gen_unit(a_.unit, into, Value::unit());
        auto body = cgm::bind(base, entered, inner.index, [&](const Value&) { return inner; });
        std::map<Value, GradedComputation> exits;
        auto widened = cgm::bind(base, body, out, [&](const Value& v) {
          auto it = exits.find(v);
          if (it == exits.end()) it = exits.emplace(v, gen_unit(a_.unit, out, v)).first;
          return it->second;
        });
        return approximate(a_.monad, widened.index, ahl_index(*d.beta, *d.pre, *d.post), widened);
      }
    }
    throw Error(ErrorCode::InvalidValue, "unknown rule");
  }

  void zero_bound(const Derivation& d) {
    if (d.beta && *d.beta != 0) {
      throw Error(ErrorCode::RuleMismatch, at_line(d) + rule_name(d.rule) + " has bound 0, not " +
                                               rational_to_string(*d.beta));
    }
  }

  void implication(const Derivation& d, const Expr& from, const Expr& to) {
    if (!a_.states->entails(from, to)) {
      throw Error(ErrorCode::InvalidImplication,
                  at_line(d) + "weak needs " + from.to_string() + " to imply " + to.to_string());
    }
  }

  Ahl a_;
};

}  // namespace

AhlScript parse_ahl(const std::string& text) { return AhlParser(text).parse(); }

AhlVerdict check_ahl(const AhlScript& script) {
  AhlVerdict v;
  Checker checker(script);
  try {
    checker.visit(script.root, 0);
    v.valid = true;
  } catch (const Error& e) {
    v.error = e.code();
    v.message = e.what();
  }
  v.nodes = std::move(checker.nodes);
  return v;
}

std::string AhlVerdict::to_text() const {
  std::string out;
  for (const auto& n : nodes) {
    out += std::string(static_cast<std::size_t>(n.depth) * 2, ' ') + n.rule + " (line " + std::to_string(n.line) +
           "): ";
    if (n.pre.empty()) {
      out += "not checked\n";
      continue;
    }
    out += "{" + n.pre + "} {" + n.post + "} bound " + rational_to_string(n.beta) + ", Pr[not post] = " +
           rational_to_string(n.failure) + (n.ok ? "" : "  VIOLATED") + "\n";
  }
  if (valid) return out + "valid\n";
  return out + "invalid: " + message + "\n";
}

}  // namespace cgm
