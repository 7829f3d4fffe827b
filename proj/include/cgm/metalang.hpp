#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cgm/ahl.hpp"
#include "cgm/core.hpp"
#include "cgm/error.hpp"
#include "cgm/syntax.hpp"

namespace cgm {

// ---------------------------------------------------------------------------
// Graded programs

struct Term {
  enum class Kind { Var, Lit, Pair, Op, Prim, Let, Pure };

  Kind kind;
  int line = 0;
  int column = 0;
  std::string name;            // Var, Prim op, Let binder ("_" when discarded)
  std::optional<Expr> expr;    // Lit, Op
  std::string at;              // Prim target object annotation (`store@S2`)
  std::vector<Term> args;      // Pair (2), Prim arguments, Let (bound, body), Pure (1)
  std::vector<Term> body;      // spawn's block, as a single term

  bool operator==(const Term& other) const;
};

struct Program {
  std::string instance;
  std::optional<std::string> start;
  std::optional<std::string> end;
  std::optional<std::pair<std::int64_t, std::int64_t>> store;
  std::optional<std::int64_t> init;
  std::optional<int> states;
  Term body;

  bool operator==(const Program& other) const = default;
};

Program parse_program(const std::string& text);
/// Canonical text; parsing it again yields the same Program.
std::string print_program(const Program& p);
std::string print_term(const Term& t);

/// Grade plus a coarse shape of the returned value.
struct GradedType {
  Morphism index;
  std::string shape;
};

/// An instance as seen by the metalanguage: its monad, objects and primitives.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual const CatGradedMonad& monad() const = 0;
  virtual ObjectId default_start() const = 0;
  /// Grade and result shape of a primitive applied at `at`.
  virtual GradedType prim_type(const Term& prim, const ObjectId& at) const = 0;
  virtual GradedComputation prim_eval(const Term& prim, const ObjectId& at, const std::vector<Value>& args,
                                      const std::optional<GradedComputation>& body) const = 0;
  /// How the final computation is shown to a user.
  virtual std::string render(const GradedComputation& c) const = 0;
};

std::shared_ptr<const Backend> make_backend(const Program& p);

GradedType infer_grade(const Backend& b, const ObjectId& start, const Term& t);
/// Infers, checks the program's end object, evaluates, and asserts that the
/// evaluated index equals the inferred one.
GradedComputation eval(const Backend& b, const ObjectId& start, const Term& t);

struct RunResult {
  GradedType type;
  GradedComputation computation;
  std::string rendered;
};

RunResult run_program(const Program& p);

// ---------------------------------------------------------------------------
// aHL derivations

struct Derivation {
  enum class Rule { Skip, Assign, Sample, Seq, Weak };

  Rule rule;
  int line = 0;
  std::string var;              // Assign, Sample
  std::optional<Expr> expr;     // Assign
  std::int64_t lo = 0, hi = 0;  // Sample
  /// Declared conclusion; Seq may omit it.
  std::optional<Rational> beta;
  std::optional<Expr> pre;
  std::optional<Expr> post;
  std::vector<Derivation> premises;
};

struct AhlScript {
  std::vector<VarDecl> vars;
  Derivation root;
};

AhlScript parse_ahl(const std::string& text);

struct AhlNode {
  std::string rule;
  int line;
  int depth;
  Rational beta;
  std::string pre;
  std::string post;
  /// Exact largest Pr[not post] over states satisfying pre.
  Rational failure;
  bool ok;
};

struct AhlVerdict {
  bool valid = false;
  std::optional<ErrorCode> error;
  std::string message;
  std::vector<AhlNode> nodes;

  std::string to_text() const;
};

AhlVerdict check_ahl(const AhlScript& script);

}  // namespace cgm
