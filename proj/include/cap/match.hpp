#pragma once

#include <optional>

#include "cap/term.hpp"

namespace cap {

struct MatchOutcome {
  enum class K { Success, Fail, Wait };
  K k = K::Wait;
  Substitution subst;  // Success only

  static MatchOutcome success(Substitution s) { return {K::Success, std::move(s)}; }
  static MatchOutcome fail() { return {K::Fail, {}}; }
  static MatchOutcome wait() { return {K::Wait, {}}; }
  bool is_success() const { return k == K::Success; }
  bool is_fail() const { return k == K::Fail; }
  bool is_wait() const { return k == K::Wait; }
};

// Disjoint union of outcomes: fail absorbs, wait dominates success.
MatchOutcome match_join(MatchOutcome x, MatchOutcome y);

MatchOutcome match(const PatternRef& p, const TermRef& s);

// Data structure: a constant applied to zero or more arguments.
bool is_data(const TermRef& t);
// Matchable form: a data structure or an abstraction.
bool is_matchable_form(const TermRef& t);
// Value: head variable or constant applied to values, or an abstraction.
bool is_value(const TermRef& t);

// One leftmost-outermost weak reduction step, if any.
std::optional<TermRef> step(const TermRef& t);

struct EvalResult {
  TermRef term;
  bool fuel_exhausted = false;
  int steps = 0;
};

EvalResult eval(const TermRef& t, int fuel);

}  // namespace cap
