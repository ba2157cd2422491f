#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cap/compat.hpp"
#include "cap/engine.hpp"
#include "cap/term.hpp"

namespace cap {

enum class TypeErrorKind {
  UnboundVariable,
  NotADatatype,
  NotAFunction,
  ArgumentMismatch,
  IncompatibleBranches,
  SortError,
  UnfoldFailure,
  InvalidPattern,
};

const char* to_string(TypeErrorKind k);

struct TypeError {
  TypeErrorKind kind;
  // Path into the term, 1-based: App children are 1 (function) and 2
  // (argument); Abs children are branch numbers.
  std::vector<int> path;
  std::string message;
};

struct TcResult {
  TypeRef type = nullptr;
  std::optional<TypeError> error;
  bool ok() const { return !error.has_value(); }
};

// Pattern typing: matchables from theta, constants as their atoms, compounds
// demand a datatype on the left.
TcResult tcp(const TypingContext& theta, const PatternRef& p);

// Components of an equivalent maximal union of arrows, or nothing when some
// component is not arrow-headed.
std::optional<std::vector<std::pair<TypeRef, TypeRef>>> unfold(TypeRef a);

// The syntax-directed checker.
TcResult tc(const TypingContext& gamma, const TermRef& t, const Engine& engine);

// Annotation sanity: closed, well-sorted, contractive.
std::optional<TypeError> check_sort(TypeRef a);

// Structural validation run before tc: pattern linearity, dom(theta) =
// fm(p), and check_sort on every annotation.
std::optional<TypeError> validate(const TermRef& t);

}  // namespace cap
