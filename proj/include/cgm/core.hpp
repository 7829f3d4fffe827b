#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cgm/indexcat.hpp"
#include "cgm/report.hpp"
#include "cgm/value.hpp"

namespace cgm {

using Rng = std::mt19937_64;

/// An inhabitant of T_f A: the index morphism and the payload.
struct GradedComputation {
  Morphism index;
  Value payload;

  bool operator==(const GradedComputation&) const = default;
};

/// Draws a payload at the given index whose carried values are taken from
/// `leaves`. Returns nullopt when the index admits no payload at all.
using Sampler = std::function<std::optional<Value>(const Morphism&, Rng&, const std::vector<Value>& leaves)>;

struct CatGradedMonad {
  std::string name;
  IndexCategory index;
  std::function<Value(const ObjectId&, const Value&)> unit;
  /// mult(f, g, p): p is a T_f payload of T_g payloads; result lives at g . f.
  std::function<Value(const Morphism&, const Morphism&, const Value&)> mult;
  std::function<Value(const Morphism&, const ValueFn&, const Value&)> map;
  std::function<bool(const Morphism&, const Value&)> valid;
  Sampler sample;
  /// Index morphisms used by the law harness; empty means index.morphisms().
  std::vector<Morphism> law_indices;
  /// Base values carried by sampled payloads.
  std::vector<Value> leaves;
};

struct TwoCatGradedMonad {
  CatGradedMonad base;
  TwoCategory index2;
  std::function<Value(const Morphism&, const Morphism&, const Value&)> approx;
};

struct GeneralisedUnit {
  CatGradedMonad monad;
  WideSubcategory sub;
  std::function<Value(const Morphism&, const Value&)> geneta;
};

struct Homomorphism {
  CatGradedMonad source;
  CatGradedMonad target;
  std::function<Value(const Morphism&, const Value&)> gamma;
};

GradedComputation unit(const CatGradedMonad& t, const ObjectId& object, const Value& a);
GradedComputation mult(const CatGradedMonad& t, const Morphism& f, const Morphism& g, const Value& nested);
Value fmap(const CatGradedMonad& t, const Morphism& f, const ValueFn& fn, const Value& payload);
/// Kleisli-style sequencing. Every continuation result must sit at `g`.
GradedComputation bind(const CatGradedMonad& t, const GradedComputation& c, const Morphism& g,
                       const std::function<GradedComputation(const Value&)>& k);
GradedComputation approximate(const TwoCatGradedMonad& t, const Morphism& f, const Morphism& g,
                              const GradedComputation& c);
GradedComputation gen_unit(const GeneralisedUnit& u, const Morphism& f, const Value& a);
/// A x T_f B -> T_f (A x B)
GradedComputation strength(const CatGradedMonad& t, const Value& a, const GradedComputation& c);

LawReport check_laws(const CatGradedMonad& t, std::size_t samples, std::uint64_t seed);
LawReport check_laws(const TwoCatGradedMonad& t, std::size_t samples, std::uint64_t seed);
LawReport check_laws(const GeneralisedUnit& u, std::size_t samples, std::uint64_t seed);
LawReport check_laws(const Homomorphism& h, std::size_t samples, std::uint64_t seed);

/// Deterministic per-law random stream.
Rng law_rng(std::uint64_t seed, const std::string& law);

/// The value functions the harness maps over payloads.
const std::vector<std::pair<std::string, ValueFn>>& probe_functions();

}  // namespace cgm
