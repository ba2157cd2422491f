#include "cap/engine.hpp"

namespace cap {

bool Engine::subtype(TypeRef a, TypeRef b) const {
  if (kind == EngineKind::Naive) return NaiveEngine().subtype_holds(a, b);
  return gfp(a, b, RelationKind::Subtype, &total, gfp_options);
}

bool Engine::eqtype(TypeRef a, TypeRef b) const {
  if (kind == EngineKind::Naive) return NaiveEngine().eqtype_holds(a, b);
  return gfp(a, b, RelationKind::Equivalence, &total, gfp_options);
}

}  // namespace cap
