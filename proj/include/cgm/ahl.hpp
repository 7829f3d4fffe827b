#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cgm/core.hpp"
#include "cgm/syntax.hpp"

namespace cgm {

struct VarDecl {
  std::string name;
  std::int64_t lo;
  std::int64_t hi;
};

/// Every assignment of in-range integers to the declared variables. A state
/// is a Seq of Ints in declaration order.
class ProgramStates {
 public:
  explicit ProgramStates(std::vector<VarDecl> vars);

  const std::vector<VarDecl>& vars() const { return vars_; }
  const std::vector<Value>& all() const { return all_; }
  std::size_t slot(const std::string& var) const;

  Expr::Lookup lookup(const Value& state) const;
  bool satisfies(const Value& state, const Expr& formula) const;
  /// phi -> psi on every state.
  bool entails(const Expr& phi, const Expr& psi) const;
  /// Throws RangeError when v is outside the variable's range.
  Value assign(const Value& state, const std::string& var, std::int64_t v) const;
  bool in_range(const std::string& var, std::int64_t v) const;
  std::string render(const Value& state) const;

 private:
  std::vector<VarDecl> vars_;
  std::vector<Value> all_;
};

ObjectId formula_object(const Expr& phi);
Expr object_formula(const ObjectId& o);

/// (beta, pre -> post) in [0,1] x Prop.
Morphism ahl_index(const Rational& beta, const Expr& pre, const Expr& post);
Rational ahl_beta(const Morphism& f);
Expr ahl_pre(const Morphism& f);
Expr ahl_post(const Morphism& f);

struct FailureBound {
  Rational probability;
  /// A precondition state attaining the maximum, when any satisfies it.
  std::optional<Value> worst_state;
};

struct Ahl {
  TwoCatGradedMonad monad;
  GeneralisedUnit unit;
  std::shared_ptr<const ProgramStates> states;

  GradedComputation skip(const Expr& phi) const;
  /// Indexed (0, post[e/x] -> post).
  GradedComputation assign(const std::string& x, const Expr& e, const Expr& post) const;
  GradedComputation sample_uniform(const std::string& x, std::int64_t lo, std::int64_t hi, const Rational& beta,
                                   const Expr& pre, const Expr& post) const;

  /// Largest probability, over states satisfying pre, of ending in a state
  /// violating post.
  FailureBound failure(const Value& payload, const Expr& pre, const Expr& post) const;
};

/// With `forget_beta`, index composition keeps only the first bound.
Ahl ahl_instance(std::vector<VarDecl> vars, bool forget_beta = false);
/// One variable x in 0..2 with a handful of formulas for the law harness.
Ahl ahl_law_instance(bool forget_beta = false);

}  // namespace cgm
