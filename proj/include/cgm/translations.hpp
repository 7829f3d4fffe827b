#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cgm/core.hpp"
#include "cgm/instances.hpp"
#include "cgm/structures.hpp"

namespace cgm {

PlainMonad list_monad();
PlainMonad maybe_monad();
LawReport check_monad_laws(const PlainMonad& m, std::size_t samples, std::uint64_t seed);
LawReport check_graded_laws(const GradedMonad& g, std::size_t samples, std::uint64_t seed);
/// Unit and associativity laws over every grade in the monoid's samples and
/// every enumerable payload, nesting enumerations three deep.
LawReport check_graded_laws_exhaustive(const GradedMonad& g);

/// Over the terminal category.
CatGradedMonad monad_to_catgraded(const PlainMonad& m);
CatGradedMonad graded_to_catgraded(const GradedMonad& g);
TwoCatGradedMonad pograded_to_2catgraded(const GradedMonad& g);

/// P must be graded by a discrete category; the result is graded by its
/// indiscrete counterpart.
CatGradedMonad discrete_param_to_catgraded(const ParameterisedMonad& p);
ParameterisedMonad catgraded_to_discrete_param(const CatGradedMonad& t);

/// T (f : I -> J) = P (I, J) over the pair completion of P's index, with
/// generalised unit on the embedded morphisms.
GeneralisedUnit param_to_catgraded_genunit(const ParameterisedMonad& p);
/// The inverse construction, rebuilding the morphism mapping from the
/// generalised unit, fmap and mult.
ParameterisedMonad catgraded_genunit_to_param(const GeneralisedUnit& g);

/// Exhaustive extensional comparison of P against its forward-then-back
/// image, with both bifunctoriality equations and both generalised-unit
/// definitions. Multiplication is compared on `mu_samples` drawn payloads.
LawReport roundtrip_param(const ParameterisedMonad& p, std::size_t mu_samples = 200, std::uint64_t seed = 0);
LawReport roundtrip_discrete_param(const ParameterisedMonad& p);
/// The two squares tying eta and mu to the morphism mapping. The eta square
/// is exhaustive. The mu square is exhaustive over index data; payloads are
/// enumerated when a configuration has at most `cap` of them, otherwise `cap`
/// are drawn.
LawReport check_dinaturality(const ParameterisedMonad& p, std::size_t cap = 2000, std::uint64_t seed = 0);

GeneralisedUnit bottom_unit_genunit(const TwoCatGradedMonad& t);

/// A finite monoidal index category: its objects form a monoid and its
/// morphisms can be tensored with an object's identity.
struct MonoidalIndex {
  IndexCategory category;
  std::function<ObjectId(const ObjectId&, const ObjectId&)> tensor;
  ObjectId unit;
  /// m . id_f for m : i -> i'.
  std::function<Morphism(const Morphism&, const ObjectId&)> tensor_id;
};

/// G f = the end over i of P (i, i . f), as dinatural families indexed by
/// the objects in order.
GradedMonad end_graded_from_param(const ParameterisedMonad& p, const MonoidalIndex& m);
/// Every element of G f over the given carried values.
std::vector<Value> end_elements(const ParameterisedMonad& p, const MonoidalIndex& m, const ObjectId& f,
                                const std::vector<Value>& leaves);
/// All families over P(i, i . f) with no dinaturality filtering.
std::vector<Value> end_product(const ParameterisedMonad& p, const MonoidalIndex& m, const ObjectId& f,
                               const std::vector<Value>& leaves);

/// Objects e and a forming Z/2 under the tensor. With `swaps`, every homset
/// holds a plain map and a swap; otherwise only identities exist.
MonoidalIndex z2_index(bool swaps);
/// The one-object, identity-only monoidal category.
MonoidalIndex trivial_monoidal_index();
/// States {0, 1} at every object; swap morphisms exchange them.
StateSpace binary_states(const MonoidalIndex& m);

}  // namespace cgm
