#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cap/type.hpp"

namespace cap {

struct Pattern;
using PatternRef = std::shared_ptr<const Pattern>;

struct Pattern {
  enum class K { Matchable, Const, Comp };
  K k = K::Const;
  std::string name;  // Matchable / Const
  PatternRef a, b;   // Comp
};

PatternRef pat_matchable(const std::string& name);
PatternRef pat_const(const std::string& name);
PatternRef pat_comp(PatternRef l, PatternRef r);

// Typing contexts map term variables to mu-types; ordered for deterministic
// rendering.
using TypingContext = std::map<std::string, TypeRef>;

struct Term;
using TermRef = std::shared_ptr<const Term>;

struct Branch {
  PatternRef pattern;
  TypingContext theta;
  TermRef body;
};

struct Term {
  enum class K { Var, Const, App, Abs };
  K k = K::Var;
  std::string name;  // Var / Const
  TermRef fn, arg;   // App
  std::vector<Branch> branches;  // Abs, nonempty
};

TermRef term_var(const std::string& name);
TermRef term_const(const std::string& name);
TermRef term_app(TermRef fn, TermRef arg);
TermRef term_abs(std::vector<Branch> branches);

using Substitution = std::map<std::string, TermRef>;

bool term_equal(const TermRef& s, const TermRef& t);
bool pattern_equal(const PatternRef& p, const PatternRef& q);

std::set<std::string> free_vars(const TermRef& t);
std::set<std::string> free_matchables(const PatternRef& p);
bool is_linear(const PatternRef& p);

// Capture-avoiding application of a substitution; matchables of a branch and
// their theta entries are renamed together when needed.
TermRef apply_subst(const Substitution& s, const TermRef& t);

// p subsumes q: some substitution of patterns for p's matchables yields q.
bool subsumes(const PatternRef& p, const PatternRef& q);

std::set<Position> positions(const PatternRef& p);
// Throws undefined_position when pi is not a position of p.
PatternRef subpattern_at(const PatternRef& p, const Position& pi);

}  // namespace cap
