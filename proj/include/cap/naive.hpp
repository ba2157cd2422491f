#pragma once

#include <optional>
#include <set>
#include <utility>

#include "cap/type.hpp"

namespace cap {

using TypePair = std::pair<TypeRef, TypeRef>;
using AssumptionSet = std::set<TypePair>;

// The invertible coinductive checkers, run directly on mu-types. This is the
// reference engine: it favors being a literal transcription of the
// high-level algorithms over speed.
class NaiveEngine {
 public:
  // Recursion-depth fuel is fuel_factor * (|a| + |b|)^2 per top-level query;
  // exceeding it raises internal_error.
  explicit NaiveEngine(int fuel_factor = 10) : fuel_factor_(fuel_factor) {}

  // On success, the returned set is Phi-dense and contains (a, b); nullopt
  // means the pair is not in the relation.
  std::optional<AssumptionSet> eqtype(const AssumptionSet& s, TypeRef a, TypeRef b);
  std::optional<AssumptionSet> subtype(const AssumptionSet& s, TypeRef a, TypeRef b);

  bool eqtype_holds(TypeRef a, TypeRef b) { return eqtype({}, a, b).has_value(); }
  bool subtype_holds(TypeRef a, TypeRef b) { return subtype({}, a, b).has_value(); }

 private:
  friend class NaiveRun;
  int fuel_factor_;
};

// Unfold, in place, the first mu component of the maximal union of t. The
// hole of the paper's first-mu context sits at that component.
TypeRef unfold_first_mu(TypeRef t);
bool has_mu_component(TypeRef t);

}  // namespace cap
