#pragma once

#include <string>

#include "cap/term.hpp"
#include "cap/type.hpp"

namespace cap {

// Surface syntax. Types: '@' (left) binds tighter than '+' (left), which
// binds tighter than '->' (right); 'mu v . T' extends maximally right.
// Lowercase identifiers are datatype variables, capitalized identifiers are
// type variables, 'name is an atom. Terms: application by juxtaposition;
// abstractions are { pat [x : T, ...]? => term | ... }. Comments run from
// '--' to end of line.
TypeRef parse_type(const std::string& text);
TermRef parse_term(const std::string& text);  // validates eagerly

// One "name : Type" binding per line; blank lines ignored.
TypingContext parse_context(const std::string& text);

std::string render_type(TypeRef t);
std::string render_term(const TermRef& t);
std::string render_pattern(const PatternRef& p);

}  // namespace cap
