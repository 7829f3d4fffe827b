#include "cgm/metalang.hpp"

#include <algorithm>
#include <set>

#include "cgm/error.hpp"
#include "cgm/instances.hpp"
#include "cgm/translations.hpp"

namespace cgm {

bool Term::operator==(const Term& o) const {
  return kind == o.kind && name == o.name && expr == o.expr && at == o.at && args == o.args && body == o.body;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

const std::set<std::string> kReserved = {"do", "pure", "spawn"};

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& text) : ts_(tokenize(text)) {}

  Program parse() {
    Program p;
    bool seen_instance = false;
    while (!ts_.at("do")) {
      if (ts_.at_end()) ts_.error("expected a 'do' block");
      auto key = ts_.peek();
      if (ts_.accept("instance")) {
        if (seen_instance) ts_.error("duplicate instance header");
        p.instance = ts_.expect_ident();
        seen_instance = true;
      } else if (ts_.accept("start")) {
        p.start = object_name();
      } else if (ts_.accept("end")) {
        p.end = object_name();
      } else if (ts_.accept("store")) {
        ts_.expect("int");
        ts_.expect("[");
        auto lo = ts_.expect_int();
        ts_.expect("..");
        auto hi = ts_.expect_int();
        ts_.expect("]");
        if (hi < lo) throw ParseError(key.line, key.column, "empty store range");
        p.store = std::make_pair(lo, hi);
      } else if (ts_.accept("init")) {
        p.init = ts_.expect_int();
      } else if (ts_.accept("states")) {
        auto n = ts_.expect_int();
        if (n < 1 || n > 9) throw ParseError(key.line, key.column, "states must be between 1 and 9");
        p.states = static_cast<int>(n);
      } else {
        ts_.error("unknown header '" + key.text + "'");
      }
    }
    if (!seen_instance) ts_.error("missing instance header");
    p.body = block();
    if (!ts_.at_end()) ts_.error("unexpected text after the program body");
    return p;
  }

 private:
  std::string object_name() {
    if (ts_.accept("*")) return "*";
    return ts_.expect_ident();
  }

  Term node(Term::Kind kind, const Token& at) {
    Term t;
    t.kind = kind;
    t.line = at.line;
    t.column = at.column;
    return t;
  }

  Term block() {
    ts_.expect("do");
    ts_.expect("{");
    auto depth = scope_.size();
    auto t = statements();
    ts_.expect("}");
    scope_.resize(depth);
    return t;
  }

  Term statements() {
    auto start = ts_.peek();
    if (ts_.at("}")) ts_.error("empty block");
    std::string binder = "_";
    if (ts_.peek().kind == Token::Kind::Ident && ts_.peek(1).text == "<-") {
      binder = ts_.expect_ident();
      if (kReserved.count(binder)) ts_.error("'" + binder + "' is reserved");
      ts_.expect("<-");
    }
    auto bound = computation();
    bool more = ts_.accept(";") && !ts_.at("}");
    if (!more) {
      if (binder != "_") throw ParseError(start.line, start.column, "a block must end with a computation, not a bind");
      return bound;
    }
    auto let = node(Term::Kind::Let, start);
    let.name = binder;
    auto depth = scope_.size();
    if (binder != "_") scope_.push_back(binder);
    auto rest = statements();
    scope_.resize(depth);
    let.args = {std::move(bound), std::move(rest)};
    return let;
  }

  Term computation() {
    auto tok = ts_.peek();
    if (ts_.at("do")) return block();
    if (ts_.accept("pure")) {
      auto t = node(Term::Kind::Pure, tok);
      t.args.push_back(value());
      return t;
    }
    if (ts_.accept("spawn")) {
      auto t = node(Term::Kind::Prim, tok);
      t.name = "spawn";
      t.body.push_back(block());
      return t;
    }
    if (tok.kind != Token::Kind::Ident) ts_.error("expected a computation");
    auto t = node(Term::Kind::Prim, tok);
    t.name = ts_.expect_ident();
    if (kReserved.count(t.name)) ts_.error("'" + t.name + "' is reserved");
    if (ts_.accept("@")) t.at = object_name();
    if (ts_.accept("(")) {
      if (!ts_.at(")")) {
        t.args.push_back(value());
        while (ts_.accept(",")) t.args.push_back(value());
      }
      ts_.expect(")");
    }
    return t;
  }

  Term value() {
    auto tok = ts_.peek();
    if (ts_.at("(")) {
      auto mark = ts_.mark();
      ts_.next();
      auto first = value();
      if (ts_.accept(",")) {
        auto second = value();
        ts_.expect(")");
        auto t = node(Term::Kind::Pair, tok);
        t.args = {std::move(first), std::move(second)};
        return t;
      }
      ts_.reset(mark);
    }
    auto e = parse_expr(ts_);
    for (const auto& v : e.free_vars()) {
      if (std::find(scope_.begin(), scope_.end(), v) == scope_.end()) {
        throw ParseError(tok.line, tok.column, "unbound variable '" + v + "'");
      }
    }
    Term t;
    switch (e.op()) {
      case Expr::Op::Var:
        t = node(Term::Kind::Var, tok);
        t.name = e.name();
        break;
      case Expr::Op::Num:
      case Expr::Op::Bool: t = node(Term::Kind::Lit, tok); break;
      default: t = node(Term::Kind::Op, tok); break;
    }
    t.expr = e;
    return t;
  }

  TokenStream ts_;
  std::vector<std::string> scope_;
};

std::string indent(int depth) { return std::string(static_cast<std::size_t>(depth) * 2, ' '); }

std::string print_value(const Term& t) {
  if (t.kind == Term::Kind::Pair) return "(" + print_value(t.args[0]) + ", " + print_value(t.args[1]) + ")";
  return t.expr->to_string();
}

std::string print_block(const Term& t, int depth);

std::string print_comp(const Term& t, int depth) {
  switch (t.kind) {
    case Term::Kind::Pure: return "pure " + print_value(t.args[0]);
    case Term::Kind::Let: return print_block(t, depth);
    case Term::Kind::Prim: {
      if (t.name == "spawn") return "spawn " + print_block(t.body[0], depth);
      std::string out = t.name;
      if (!t.at.empty()) out += "@" + t.at;
      if (!t.args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + print_value(t.args[i]);
        out += ")";
      }
      return out;
    }
    default: throw Error(ErrorCode::InvalidValue, "not a computation");
  }
}

std::string print_block(const Term& t, int depth) {
  std::string out = "do {\n";
  const Term* cur = &t;
  while (cur->kind == Term::Kind::Let) {
    out += indent(depth + 1);
    if (cur->name != "_") out += cur->name + " <- ";
    out += print_comp(cur->args[0], depth + 1) + ";\n";
    cur = &cur->args[1];
  }
  out += indent(depth + 1) + print_comp(*cur, depth + 1) + "\n";
  return out + indent(depth) + "}";
}

}  // namespace

Program parse_program(const std::string& text) { return ProgramParser(text).parse(); }

std::string print_term(const Term& t) { return print_block(t, 0); }

std::string print_program(const Program& p) {
  std::string out = "instance " + p.instance + "\n";
  if (p.states) out += "states " + std::to_string(*p.states) + "\n";
  if (p.store) out += "store int[" + std::to_string(p.store->first) + ".." + std::to_string(p.store->second) + "]\n";
  if (p.init) out += "init " + std::to_string(*p.init) + "\n";
  if (p.start) out += "start " + *p.start + "\n";
  if (p.end) out += "end " + *p.end + "\n";
  return out + print_block(p.body, 0) + "\n";
}

// ---------------------------------------------------------------------------
// Grades and evaluation

namespace {

std::string where(const Term& t) { return std::to_string(t.line) + ":" + std::to_string(t.column) + ": "; }

using Shapes = std::map<std::string, std::string>;
using Env = std::map<std::string, Value>;

std::string expr_shape(const Expr& e, const Shapes& shapes) {
  switch (e.op()) {
    case Expr::Op::Num:
    case Expr::Op::Neg:
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div:
    case Expr::Op::Mod: return "int";
    case Expr::Op::Var: {
      auto it = shapes.find(e.name());
      return it == shapes.end() ? "any" : it->second;
    }
    default: return "bool";
  }
}

std::string value_shape(const Term& t, const Shapes& shapes) {
  if (t.kind == Term::Kind::Pair) {
    return "(" + value_shape(t.args[0], shapes) + ", " + value_shape(t.args[1], shapes) + ")";
  }
  return expr_shape(*t.expr, shapes);
}

Value eval_value(const Term& t, const Env& env) {
  if (t.kind == Term::Kind::Pair) return Value::pair(eval_value(t.args[0], env), eval_value(t.args[1], env));
  return t.expr->eval([&](const std::string& name) -> std::optional<Value> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
}

GradedType infer(const Backend& b, const ObjectId& at, const Term& t, const Shapes& shapes) {
  const auto& c = b.monad().index;
  switch (t.kind) {
    case Term::Kind::Pure: return {c.identity(at), value_shape(t.args[0], shapes)};
    case Term::Kind::Prim: return b.prim_type(t, at);
    case Term::Kind::Let: {
      auto f = infer(b, at, t.args[0], shapes);
      auto inner = shapes;
      if (t.name != "_") inner[t.name] = f.shape;
      auto g = infer(b, f.index.tgt(), t.args[1], inner);
      return {c.compose(g.index, f.index), g.shape};
    }
    default: throw Error(ErrorCode::InvalidValue, where(t) + "a value is not a computation");
  }
}

Value env_value(const Env& env) {
  std::vector<Value::Entry> rows;
  for (const auto& [k, v] : env) rows.emplace_back(Value::str(k), v);
  return Value::table(std::move(rows));
}

// Continuation results keyed by the term and the environment it runs in.
using Memo = std::map<std::pair<const Term*, Value>, Value>;

GradedComputation evaluate(const Backend& b, const ObjectId& at, const Term& t, const Env& env, const Shapes& shapes,
                           Memo& memo) {
  const auto& m = b.monad();
  switch (t.kind) {
    case Term::Kind::Pure: return unit(m, at, eval_value(t.args[0], env));
    case Term::Kind::Prim: {
      std::vector<Value> args;
      for (const auto& a : t.args) args.push_back(eval_value(a, env));
      std::optional<GradedComputation> body;
      if (!t.body.empty()) body = evaluate(b, b.default_start(), t.body[0], env, shapes, memo);
      return b.prim_eval(t, at, args, body);
    }
    case Term::Kind::Let: {
      auto first = evaluate(b, at, t.args[0], env, shapes, memo);
      auto bound_shape = infer(b, at, t.args[0], shapes).shape;
      auto inner_shapes = shapes;
      if (t.name != "_") inner_shapes[t.name] = bound_shape;
      auto g = infer(b, first.index.tgt(), t.args[1], inner_shapes).index;
      // Strength on the environment, then the continuation under fmap, then mult.
      auto paired = strength(m, env_value(env), first);
      auto nested = m.map(first.index, [&](const Value& ea) {
        Env inner;
        for (const auto& [k, v] : ea.first().entries()) inner.emplace(k.as_str(), v);
        if (t.name != "_") inner[t.name] = ea.second();
        auto key = std::make_pair(&t.args[1], env_value(inner));
        if (auto hit = memo.find(key); hit != memo.end()) return hit->second;
        auto rest = evaluate(b, first.index.tgt(), t.args[1], inner, inner_shapes, memo);
        if (!(rest.index == g)) {
          throw Error(ErrorCode::InconsistentContinuationIndex,
                      where(t) + "continuation produced " + rest.index.describe() + ", expected " + g.describe());
        }
        return memo.emplace(std::move(key), rest.payload).first->second;
      }, paired.payload);
      return mult(m, first.index, g, nested);
    }
    default: throw Error(ErrorCode::InvalidValue, where(t) + "a value is not a computation");
  }
}

}  // namespace

GradedType infer_grade(const Backend& b, const ObjectId& start, const Term& t) {
  if (!b.monad().index.has_object(start)) throw Error(ErrorCode::UnknownObject, start.name() + " is not an object");
  return infer(b, start, t, {});
}

GradedComputation eval(const Backend& b, const ObjectId& start, const Term& t) {
  auto type = infer_grade(b, start, t);
  Memo memo;
  auto c = evaluate(b, start, t, {}, {}, memo);
  if (!(c.index == type.index)) {
    throw Error(ErrorCode::GradeMismatch, "evaluation produced " + c.index.describe() + " but inference gave " +
                                              type.index.describe());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Backends

namespace {

void arity(const Term& t, std::size_t n) {
  if (t.args.size() != n) {
    throw Error(ErrorCode::GradeMismatch, where(t) + t.name + " takes " + std::to_string(n) + " argument" +
                                              (n == 1 ? "" : "s") + ", got " + std::to_string(t.args.size()));
  }
}

void no_target(const Term& t) {
  if (!t.at.empty()) throw Error(ErrorCode::GradeMismatch, where(t) + t.name + " takes no @ target");
}

class IdentityBackend final : public Backend {
 public:
  IdentityBackend() : monad_(identity_instance(terminal_category())) {}
  const CatGradedMonad& monad() const override { return monad_; }
  ObjectId default_start() const override { return star(); }
  GradedType prim_type(const Term& t, const ObjectId&) const override {
    throw Error(ErrorCode::UnknownPrim, where(t) + "the identity instance has no primitive " + t.name);
  }
  GradedComputation prim_eval(const Term& t, const ObjectId&, const std::vector<Value>&,
                              const std::optional<GradedComputation>&) const override {
    throw Error(ErrorCode::UnknownPrim, where(t) + t.name);
  }
  std::string render(const GradedComputation& c) const override { return "result: " + c.payload.to_string(); }

 private:
  CatGradedMonad monad_;
};

class ListBackend final : public Backend {
 public:
  ListBackend() : monad_(graded_list_instance(4).base) {}
  const CatGradedMonad& monad() const override { return monad_; }
  ObjectId default_start() const override { return star(); }
  GradedType prim_type(const Term& t, const ObjectId&) const override {
    no_target(t);
    if (t.name == "fail") {
      arity(t, 0);
      return {list_grade(0), "any"};
    }
    if (t.name == "choose") {
      std::string shape = "any";
      if (!t.args.empty()) shape = value_shape(t.args[0], {});
      return {list_grade(static_cast<std::int64_t>(t.args.size())), shape};
    }
    throw Error(ErrorCode::UnknownPrim, where(t) + "glist has no primitive " + t.name);
  }
  GradedComputation prim_eval(const Term& t, const ObjectId&, const std::vector<Value>& args,
                              const std::optional<GradedComputation>&) const override {
    if (t.name == "fail") return list_fail();
    return list_choose(args);
  }
  std::string render(const GradedComputation& c) const override { return "result: " + c.payload.to_string(); }

 private:
  CatGradedMonad monad_;
};

class LockBackend final : public Backend {
 public:
  LockBackend(std::int64_t lo, std::int64_t hi, std::int64_t init) : st_(concst_instance(lo, hi)), init_(init) {}
  const CatGradedMonad& monad() const override { return st_.monad; }
  ObjectId default_start() const override { return ObjectId("free"); }

  GradedType prim_type(const Term& t, const ObjectId& at) const override {
    no_target(t);
    if (t.name == "spawn") {
      arity(t, 0);
      auto body = infer_grade(*this, default_start(), t.body.at(0));
      if (!(body.index.src() == default_start()) || !(body.index.tgt() == default_start())) {
        throw Error(ErrorCode::SpawnGradeError, where(t) + "spawned body has grade " + body.index.describe() +
                                                    "; only free -> free computations may be spawned");
      }
      if (!(at == default_start())) {
        throw Error(ErrorCode::GradeMismatch, where(t) + "spawn needs free but the program is at " + at.name());
      }
      return {st_.monad.index.identity(at), "unit"};
    }
    Morphism step = [&] {
      try {
        return st_.step(t.name);
      } catch (const Error&) {
        throw Error(ErrorCode::UnknownPrim, where(t) + "concst has no primitive " + t.name);
      }
    }();
    arity(t, t.name == "put" ? 1 : 0);
    if (!(step.src() == at)) {
      throw Error(ErrorCode::GradeMismatch,
                  where(t) + t.name + " needs " + step.src().name() + " but the program is at " + at.name());
    }
    return {step, t.name == "get" ? "int" : "unit"};
  }

  GradedComputation prim_eval(const Term& t, const ObjectId&, const std::vector<Value>& args,
                              const std::optional<GradedComputation>& body) const override {
    if (t.name == "spawn") return st_.spawn(*body);
    if (t.name == "get") return st_.get();
    if (t.name == "put") return st_.put(args.at(0));
    if (t.name == "lock") return st_.lock();
    return st_.unlock();
  }

  std::string render(const GradedComputation& c) const override {
    auto r = st_.run(c, init_);
    return "result: " + r.first().to_string() + "\nstore: " + st_.normalise(init_).to_string() + " -> " +
           r.second().to_string();
  }

 private:
  ConcSt st_;
  std::int64_t init_;
};

class TypedStateBackend final : public Backend {
 public:
  TypedStateBackend(int n, std::int64_t init)
      : n_(n), space_(function_space(n)), unit_(param_to_catgraded_genunit(typed_state(space_))), init_(init) {}
  const CatGradedMonad& monad() const override { return unit_.monad; }
  ObjectId default_start() const override { return ObjectId("S" + std::to_string(n_)); }

  GradedType prim_type(const Term& t, const ObjectId& at) const override {
    const auto& c = unit_.monad.index;
    if (t.name == "read") {
      no_target(t);
      arity(t, 0);
      return {c.identity(at), "int"};
    }
    if (t.name == "store") {
      arity(t, 1);
      if (t.at.empty()) throw Error(ErrorCode::GradeMismatch, where(t) + "store needs a target, e.g. store@S2(0)");
      ObjectId to(t.at);
      if (!c.has_object(to)) throw Error(ErrorCode::GradeMismatch, where(t) + t.at + " is not a state set");
      return {at == to ? c.identity(at) : Morphism::inj2(at, to), "unit"};
    }
    throw Error(ErrorCode::UnknownPrim, where(t) + "tstate has no primitive " + t.name);
  }

  GradedComputation prim_eval(const Term& t, const ObjectId& at, const std::vector<Value>& args,
                              const std::optional<GradedComputation>&) const override {
    if (t.name == "read") return {unit_.monad.index.identity(at), tstate_read(space_, at)};
    ObjectId to(t.at);
    const auto& allowed = space_.states.at(to);
    if (std::find(allowed.begin(), allowed.end(), args.at(0)) == allowed.end()) {
      throw Error(ErrorCode::RangeError, where(t) + args.at(0).to_string() + " is not a state of " + t.at);
    }
    auto index = at == to ? unit_.monad.index.identity(at) : Morphism::inj2(at, to);
    return {index, tstate_store(space_, at, args.at(0))};
  }

  std::string render(const GradedComputation& c) const override {
    auto s = Value::integer(init_);
    const auto* row = c.payload.lookup(s);
    if (!row) throw Error(ErrorCode::RangeError, "initial state " + s.to_string() + " is not in " + c.index.src().name());
    return "result: " + row->first().to_string() + "\nstate: " + c.index.src().name() + " " + s.to_string() + " -> " +
           c.index.tgt().name() + " " + row->second().to_string();
  }

 private:
  int n_;
  StateSpace space_;
  GeneralisedUnit unit_;
  std::int64_t init_;
};

}  // namespace

std::shared_ptr<const Backend> make_backend(const Program& p) {
  if (p.instance == "identity") return std::make_shared<IdentityBackend>();
  if (p.instance == "glist") return std::make_shared<ListBackend>();
  if (p.instance == "concst") {
    auto range = p.store.value_or(std::make_pair<std::int64_t, std::int64_t>(0, 99));
    return std::make_shared<LockBackend>(range.first, range.second, p.init.value_or(range.first));
  }
  if (p.instance == "tstate") return std::make_shared<TypedStateBackend>(p.states.value_or(3), p.init.value_or(0));
  throw Error(ErrorCode::UnknownInstance, "no program instance named " + p.instance);
}

RunResult run_program(const Program& p) {
  auto b = make_backend(p);
  ObjectId start = p.start ? ObjectId(*p.start) : b->default_start();
  auto type = infer_grade(*b, start, p.body);
  ObjectId end = p.end ? ObjectId(*p.end) : start;
  if (!(type.index.tgt() == end)) {
    const Term* last = &p.body;
    while (last->kind == Term::Kind::Let) last = &last->args[1];
    throw Error(ErrorCode::GradeMismatch, where(*last) + "program ends at " + type.index.tgt().name() + " but must end at " +
                                              end.name() + " (grade " + type.index.describe() + ")");
  }
  auto c = eval(*b, start, p.body);
  return {type, c, b->render(c)};
}

}  // namespace cgm
