#pragma once

#include "cap/gfp.hpp"
#include "cap/naive.hpp"

namespace cap {

enum class EngineKind { Naive, Automata };

// Handle selecting the relation engine for subtype/eqtype queries. Gfp
// statistics accumulate across queries made through the handle.
struct Engine {
  EngineKind kind = EngineKind::Automata;
  GfpOptions gfp_options{};
  mutable GfpStats total{};

  bool subtype(TypeRef a, TypeRef b) const;
  bool eqtype(TypeRef a, TypeRef b) const;
};

}  // namespace cap
