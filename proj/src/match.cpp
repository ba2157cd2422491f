#include "cap/match.hpp"

namespace cap {

MatchOutcome match_join(MatchOutcome x, MatchOutcome y) {
  if (x.is_fail() || y.is_fail()) return MatchOutcome::fail();
  if (x.is_wait() || y.is_wait()) return MatchOutcome::wait();
  Substitution s = std::move(x.subst);
  for (auto& [k, v] : y.subst) s.emplace(k, std::move(v));  // disjoint by linearity
  return MatchOutcome::success(std::move(s));
}

namespace {

// Head of the application spine.
const Term* spine_head(const Term* t) {
  while (t->k == Term::K::App) t = t->fn.get();
  return t;
}

// The argument's shape at the root is already decided: it is a constant, an
// abstraction, or an application whose spine head is a constant or variable.
// Reduction cannot change such a root (only substitution for a head variable
// could), so matching against it never has to wait. A bare variable is not
// shape-stable. This is what makes e.g. matching the pattern c c against the
// open term x d fail rather than wait.
bool shape_stable(const TermRef& t) {
  switch (t->k) {
    case Term::K::Const:
    case Term::K::Abs:
      return true;
    case Term::K::Var:
      return false;
    case Term::K::App: {
      const Term* h = spine_head(t.get());
      return h->k == Term::K::Const || h->k == Term::K::Var;
    }
  }
  return false;
}

}  // namespace

MatchOutcome match(const PatternRef& p, const TermRef& s) {
  // Clauses evaluated top to bottom.
  if (p->k == Pattern::K::Matchable) {
    Substitution sub;
    sub.emplace(p->name, s);
    return MatchOutcome::success(std::move(sub));
  }
  if (p->k == Pattern::K::Const && s->k == Term::K::Const && p->name == s->name)
    return MatchOutcome::success({});
  if (p->k == Pattern::K::Comp && s->k == Term::K::App && shape_stable(s))
    return match_join(match(p->a, s->fn), match(p->b, s->arg));
  if (shape_stable(s)) return MatchOutcome::fail();
  return MatchOutcome::wait();
}

bool is_data(const TermRef& t) {
  return spine_head(t.get())->k == Term::K::Const && t->k != Term::K::Abs;
}

bool is_matchable_form(const TermRef& t) { return t->k == Term::K::Abs || is_data(t); }

bool is_value(const TermRef& t) {
  if (t->k == Term::K::Abs) return true;
  const Term* cur = t.get();
  while (cur->k == Term::K::App) {
    if (!is_value(cur->arg)) return false;
    cur = cur->fn.get();
  }
  return cur->k == Term::K::Var || cur->k == Term::K::Const;
}

namespace {

// Scan branches in order: beta fires at the first Success provided every
// earlier branch failed; an earlier Wait means this application is not a
// redex.
std::optional<TermRef> try_beta(const TermRef& t) {
  if (t->k != Term::K::App || t->fn->k != Term::K::Abs) return std::nullopt;
  for (const Branch& br : t->fn->branches) {
    MatchOutcome m = match(br.pattern, t->arg);
    if (m.is_success()) return apply_subst(m.subst, br.body);
    if (m.is_wait()) return std::nullopt;
  }
  return std::nullopt;  // all branches failed: stuck
}

}  // namespace

std::optional<TermRef> step(const TermRef& t) {
  switch (t->k) {
    case Term::K::Var:
    case Term::K::Const:
    case Term::K::Abs:  // weak reduction: never under abstractions
      return std::nullopt;
    case Term::K::App: {
      if (auto r = try_beta(t)) return r;
      if (auto f = step(t->fn)) return term_app(*f, t->arg);
      if (auto a = step(t->arg)) return term_app(t->fn, *a);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

EvalResult eval(const TermRef& t, int fuel) {
  TermRef cur = t;
  int steps = 0;
  for (;;) {
    auto next = step(cur);
    if (!next) return {cur, false, steps};
    if (steps == fuel) return {cur, true, steps};
    cur = *next;
    ++steps;
  }
}

}  // namespace cap
