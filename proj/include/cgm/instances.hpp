#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cgm/core.hpp"
#include "cgm/structures.hpp"

namespace cgm {

/// Every T_f is the identity functor.
CatGradedMonad identity_instance(IndexCategory c);

// ---------------------------------------------------------------------------
// Graded lists: a list at grade n has at most n elements.

GradedMonad graded_list(std::int64_t max_grade);
/// Same as graded_list except that mult drops the last element.
GradedMonad broken_graded_list(std::int64_t max_grade);
TwoCatGradedMonad graded_list_instance(std::int64_t max_grade);
TwoCatGradedMonad broken_graded_list_instance(std::int64_t max_grade);
/// List reversal is a homomorphism of the graded list into itself.
Homomorphism list_reverse_homomorphism(std::int64_t max_grade);
/// Sorting is not: it fails to commute with concatenation.
Homomorphism list_sort_homomorphism(std::int64_t max_grade);

/// Every list of grade m <= max_grade over `alphabet`, bound to every
/// continuation into lists of grade n: the result has at most m*n elements,
/// and approximation along m <= m', n <= n' commutes with mult.
LawReport check_list_bound_exhaustive(const GradedMonad& g, std::int64_t max_grade, const std::vector<Value>& alphabet);

Morphism list_grade(std::int64_t n);
GradedComputation list_choose(std::vector<Value> options);
GradedComputation list_fail();

// ---------------------------------------------------------------------------
// ConcSt: the state monad over an integer cell, graded by the lock protocol.

struct ConcSt {
  CatGradedMonad monad;
  std::int64_t lo;
  std::int64_t hi;

  Morphism step(const std::string& generator) const;
  /// Writes wrap around the store range.
  Value normalise(std::int64_t v) const;

  GradedComputation get() const;
  GradedComputation put(const Value& v) const;
  GradedComputation lock() const;
  GradedComputation unlock() const;
  /// Only free -> free bodies may be spawned; they run to completion.
  GradedComputation spawn(const GradedComputation& body) const;

  /// Runs a computation from an initial store; returns (result, store).
  Value run(const GradedComputation& c, std::int64_t init) const;
};

ConcSt concst_instance(std::int64_t lo = 0, std::int64_t hi = 2);

// ---------------------------------------------------------------------------
// Typed state: P (I, J) A = (A x S_J)^(S_I).

struct StateSpace {
  IndexCategory category;
  std::map<ObjectId, std::vector<Value>> states;
  /// Action of a morphism I -> J on states of I.
  std::function<Value(const Morphism&, const Value&)> apply;
};

/// Objects S1..Sn with Sk = {0..k-1}; morphisms are all functions between them.
StateSpace function_space(int n);
/// As function_space, keeping only the non-identity functions accepted by `keep`.
StateSpace function_space(int n, const std::function<bool(int from, int to, const std::vector<int>&)>& keep);
/// Identity-only version: the morphism mapping is disabled.
StateSpace discrete_space(int n);
/// The function S_from -> S_to encoded by a morphism of a function space.
std::vector<int> state_function(const Morphism& m);

ParameterisedMonad typed_state(StateSpace space, std::vector<Value> leaves = {});
ParameterisedMonad typed_state_param(int n);
ParameterisedMonad typed_state_discrete(int n);

/// read : P(S, S) S and store v : P(I, J) 1.
Value tstate_read(const StateSpace& space, const ObjectId& s);
Value tstate_store(const StateSpace& space, const ObjectId& from, const Value& v);

/// Restricts a parameterised monad to the morphisms of `c`: computations at
/// P(I, J) exist only when c has a morphism I -> J.
GeneralisedUnit constructive_param(const ParameterisedMonad& p, const IndexCategory& c);

}  // namespace cgm
