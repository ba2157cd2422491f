#include "cap/automaton.hpp"

#include <algorithm>
#include <map>

#include "cap/errors.hpp"

namespace cap {

std::string label_text(const Label& l) {
  switch (l.k) {
    case Label::K::Atom:
      return l.quoted ? "'" + str(l.name) : str(l.name);
    case Label::K::App:
      return "@";
    case Label::K::Arrow:
      return "->";
    case Label::K::Union:
      return "+" + std::to_string(l.arity);
  }
  return "?";
}

uint32_t Automaton::succ(uint32_t q, int i) const {
  if (q >= states.size()) throw undefined_position("succ: no such state");
  const State& s = states[q];
  if (i < 1 || static_cast<size_t>(i) > s.next.size())
    throw undefined_position("succ: index " + std::to_string(i) + " out of range for arity " +
                             std::to_string(s.next.size()));
  return s.next[static_cast<size_t>(i - 1)];
}

std::string Automaton::dump() const {
  std::string out;
  for (size_t i = 0; i < states.size(); ++i) {
    out += "q" + std::to_string(i) + ": " + label_text(states[i].label) + " -> [";
    for (size_t j = 0; j < states[i].next.size(); ++j) {
      if (j) out += ", ";
      out += "q" + std::to_string(states[i].next[j]);
    }
    out += "]\n";
  }
  return out;
}

namespace {

class Builder {
 public:
  explicit Builder(bool dedup) : dedup_(dedup) {}

  uint32_t state_of(TypeRef t) {
    std::vector<TypeRef> comps = nary_components(t);
    if (dedup_) {
      std::vector<TypeRef> uniq;
      for (TypeRef c : comps)
        if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(c);
      comps = std::move(uniq);
    }
    if (comps.size() == 1) return single_state(comps[0]);
    auto it = union_memo_.find(comps);
    if (it != union_memo_.end()) return it->second;
    uint32_t id = reserve();
    union_memo_.emplace(comps, id);
    Label l;
    l.k = Label::K::Union;
    l.arity = static_cast<int>(comps.size());
    m_.states[id].label = l;
    std::vector<uint32_t> next;
    next.reserve(comps.size());
    for (TypeRef c : comps) next.push_back(single_state(c));
    m_.states[id].next = std::move(next);
    return id;
  }

  Automaton take() { return std::move(m_); }

 private:
  // c has an atom/variable/@/-> head.
  uint32_t single_state(TypeRef c) {
    auto it = single_memo_.find(c);
    if (it != single_memo_.end()) return it->second;
    uint32_t id = reserve();
    single_memo_.emplace(c, id);
    Label l;
    switch (c->kind) {
      case TypeKind::Atom:
        l.k = Label::K::Atom;
        l.name = c->name;
        l.quoted = true;
        break;
      case TypeKind::DVar:
      case TypeKind::TVar:
        l.k = Label::K::Atom;
        l.name = c->name;
        l.quoted = false;
        break;
      case TypeKind::Comp:
      case TypeKind::Arrow:
        l.k = c->kind == TypeKind::Comp ? Label::K::App : Label::K::Arrow;
        l.arity = 2;
        break;
      default:
        throw internal_error("compile: union or mu head where a constructor was expected");
    }
    m_.states[id].label = l;
    if (l.arity == 2) {
      uint32_t c1 = state_of(c->a);
      uint32_t c2 = state_of(c->b);
      m_.states[id].next = {c1, c2};
    }
    return id;
  }

  uint32_t reserve() {
    m_.states.emplace_back();
    return static_cast<uint32_t>(m_.states.size() - 1);
  }

  bool dedup_;
  Automaton m_;
  std::map<TypeRef, uint32_t> single_memo_;
  std::map<std::vector<TypeRef>, uint32_t> union_memo_;
};

}  // namespace

Automaton compile(TypeRef a, bool dedup_union_siblings) {
  Builder b(dedup_union_siblings);
  uint32_t root = b.state_of(a);
  Automaton m = b.take();
  m.initial = root;
  return m;
}

uint32_t delta_hat(const Automaton& m, uint32_t q, const std::string& path) {
  for (char c : path) {
    if (c < '1' || c > '9') throw undefined_position("delta_hat: bad path character");
    q = m.succ(q, c - '0');
  }
  return q;
}

}  // namespace cap
