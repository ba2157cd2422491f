#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cap/type.hpp"

namespace cap {

// Labels over the n-ary-union alphabet: nullary idents, binary @ and ->, and
// unions of arity n >= 2.
struct Label {
  enum class K { Atom, App, Arrow, Union };
  K k = K::Atom;
  Name name = nullptr;  // Atom
  bool quoted = true;   // Atom: type constant (true) vs variable (false)
  int arity = 0;

  friend bool operator==(const Label& x, const Label& y) {
    return x.k == y.k && x.name == y.name && x.arity == y.arity;
  }
};

std::string label_text(const Label& l);

// Deterministic term automaton for the infinite n-ary tree of a mu-type.
// States are densely numbered; every state is reachable from the initial
// one, and no union state has a union child.
struct Automaton {
  struct State {
    Label label;
    std::vector<uint32_t> next;  // next.size() == label.arity
  };
  std::vector<State> states;
  uint32_t initial = 0;

  // States plus transitions.
  size_t size() const {
    size_t edges = 0;
    for (const State& s : states) edges += s.next.size();
    return states.size() + edges;
  }

  // 1-based successor; throws undefined_position when out of range.
  uint32_t succ(uint32_t q, int i) const;

  // One line per state: "q<i>: <label> -> [q<j>, ...]".
  std::string dump() const;
};

// Compile a closed, contractive, well-sorted mu-type. When
// dedup_union_siblings is set (the default), syntactically identical
// flattened union components are merged, an application of idempotence that
// shrinks union arities.
Automaton compile(TypeRef a, bool dedup_union_siblings = true);

// delta-hat: follow a string of 1-based child indices.
uint32_t delta_hat(const Automaton& m, uint32_t q, const std::string& path);

}  // namespace cap
