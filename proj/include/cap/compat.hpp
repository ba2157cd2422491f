#pragma once

#include <set>
#include <vector>

#include "cap/engine.hpp"
#include "cap/term.hpp"

namespace cap {

// A branch pattern with its annotation context and the type tcp assigns it.
struct TypedPattern {
  PatternRef pattern;
  TypingContext theta;
  TypeRef ty;
};

// Positions with no proper extension in the set.
std::set<Position> mpos(const std::set<Position>& positions);

// Maximal common positions where the subpattern of p fails to subsume that
// of q.
std::set<Position> cpos(const PatternRef& p, const PatternRef& q);

// The compatibility predicate, computed by walking pattern and type
// together: union types only appear at leaf positions of a well-typed
// pattern, so compound patterns always carry @-types.
bool pcomp(const TypedPattern& tp, const TypedPattern& tq);

// not pcomp, or B subtype of A.
bool comp(const TypedPattern& tp, const TypedPattern& tq, const Engine& engine);

// Every ordered pair i < j passes comp.
bool list_compatible(const std::vector<TypedPattern>& branches, const Engine& engine);

}  // namespace cap
