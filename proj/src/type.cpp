#include "cap/type.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "cap/errors.hpp"

namespace cap {

bool Type::has_free(Name v) const {
  return std::binary_search(free_vars.begin(), free_vars.end(), v);
}

namespace {

std::vector<Name> merge_names(const std::vector<Name>& x, const std::vector<Name>& y) {
  std::vector<Name> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::vector<Name> without(const std::vector<Name>& x, Name v) {
  std::vector<Name> out;
  out.reserve(x.size());
  for (Name n : x)
    if (n != v) out.push_back(n);
  return out;
}

struct Key {
  TypeKind kind;
  Name name;
  Sort binder_sort;
  TypeRef a;
  TypeRef b;
  bool operator==(const Key& o) const {
    return kind == o.kind && name == o.name && binder_sort == o.binder_sort && a == o.a &&
           b == o.b;
  }
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    auto mix = [](size_t h, size_t v) { return h * 1000003u ^ v; };
    size_t h = static_cast<size_t>(k.kind) * 0x9e3779b97f4a7c15ull;
    h = mix(h, reinterpret_cast<size_t>(k.name));
    h = mix(h, static_cast<size_t>(k.binder_sort));
    h = mix(h, reinterpret_cast<size_t>(k.a));
    h = mix(h, reinterpret_cast<size_t>(k.b));
    return h;
  }
};

class Arena {
 public:
  static Arena& instance() {
    static Arena a;
    return a;
  }

  TypeRef get(const Key& k) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    Type t = build(k);
    t.id = static_cast<uint32_t>(storage_.size());
    storage_.push_back(std::move(t));
    TypeRef ref = &storage_.back();
    memo_.emplace(k, ref);
    return ref;
  }

 private:
  static Type build(const Key& k) {
    Type t;
    t.kind = k.kind;
    t.name = k.name;
    t.binder_sort = k.binder_sort;
    t.a = k.a;
    t.b = k.b;
    switch (k.kind) {
      case TypeKind::DVar:
        t.sort = Sort::Datatype;
        t.free_vars = {k.name};
        t.exposed_vars = {k.name};
        break;
      case TypeKind::TVar:
        t.sort = Sort::Type;
        t.free_vars = {k.name};
        t.exposed_vars = {k.name};
        break;
      case TypeKind::Atom:
        t.sort = Sort::Datatype;
        break;
      case TypeKind::Comp:
        t.sort = Sort::Datatype;
        t.well_sorted = k.a->well_sorted && k.b->well_sorted && k.a->sort == Sort::Datatype;
        t.contractive = k.a->contractive && k.b->contractive;
        t.size = 1 + k.a->size + k.b->size;
        t.free_vars = merge_names(k.a->free_vars, k.b->free_vars);
        break;
      case TypeKind::Arrow:
        t.sort = Sort::Type;
        t.well_sorted = k.a->well_sorted && k.b->well_sorted;
        t.contractive = k.a->contractive && k.b->contractive;
        t.size = 1 + k.a->size + k.b->size;
        t.free_vars = merge_names(k.a->free_vars, k.b->free_vars);
        break;
      case TypeKind::Union:
        t.sort = (k.a->sort == Sort::Datatype && k.b->sort == Sort::Datatype) ? Sort::Datatype
                                                                              : Sort::Type;
        t.well_sorted = k.a->well_sorted && k.b->well_sorted;
        t.contractive = k.a->contractive && k.b->contractive;
        t.size = 1 + k.a->size + k.b->size;
        t.free_vars = merge_names(k.a->free_vars, k.b->free_vars);
        t.exposed_vars = merge_names(k.a->exposed_vars, k.b->exposed_vars);
        break;
      case TypeKind::Mu: {
        bool binder_exposed =
            std::binary_search(k.a->exposed_vars.begin(), k.a->exposed_vars.end(), k.name);
        t.sort = k.binder_sort == Sort::Datatype ? Sort::Datatype : Sort::Type;
        t.well_sorted =
            k.a->well_sorted && (k.binder_sort != Sort::Datatype || k.a->sort == Sort::Datatype);
        t.contractive = k.a->contractive && !binder_exposed;
        t.size = 1 + k.a->size;
        t.free_vars = without(k.a->free_vars, k.name);
        t.exposed_vars = without(k.a->exposed_vars, k.name);
        break;
      }
    }
    return t;
  }

  std::mutex mutex_;
  std::unordered_map<Key, TypeRef, KeyHash> memo_;
  std::deque<Type> storage_;
};

TypeRef make(TypeKind kind, Name name, Sort binder_sort, TypeRef a, TypeRef b) {
  return Arena::instance().get(Key{kind, name, binder_sort, a, b});
}

}  // namespace

TypeRef mk_dvar(const std::string& name) {
  return make(TypeKind::DVar, intern(name), Sort::Type, nullptr, nullptr);
}
TypeRef mk_tvar(const std::string& name) {
  return make(TypeKind::TVar, intern(name), Sort::Type, nullptr, nullptr);
}
TypeRef mk_atom(const std::string& name) {
  return make(TypeKind::Atom, intern(name), Sort::Type, nullptr, nullptr);
}
TypeRef mk_comp(TypeRef d, TypeRef a) {
  return make(TypeKind::Comp, nullptr, Sort::Type, d, a);
}
TypeRef mk_arrow(TypeRef dom, TypeRef cod) {
  return make(TypeKind::Arrow, nullptr, Sort::Type, dom, cod);
}
TypeRef mk_union(TypeRef l, TypeRef r) {
  return make(TypeKind::Union, nullptr, Sort::Type, l, r);
}
TypeRef mk_mu(const std::string& binder, Sort binder_sort, TypeRef body) {
  return make(TypeKind::Mu, intern(binder), binder_sort, body, nullptr);
}

bool is_contractive(TypeRef t) { return t->contractive; }
bool is_well_sorted(TypeRef t) { return t->well_sorted; }
bool is_datatype(TypeRef t) { return t->well_sorted && t->sort == Sort::Datatype; }
int type_size(TypeRef t) { return t->size; }

namespace {

TypeRef subst_rec(Name v, TypeRef repl, TypeRef t,
                  std::unordered_map<TypeRef, TypeRef>& memo) {
  if (!t->has_free(v)) return t;
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  TypeRef out = t;
  switch (t->kind) {
    case TypeKind::DVar:
    case TypeKind::TVar:
      out = repl;  // name matches or has_free would have been false
      break;
    case TypeKind::Atom:
      break;
    case TypeKind::Comp:
      out = mk_comp(subst_rec(v, repl, t->a, memo), subst_rec(v, repl, t->b, memo));
      break;
    case TypeKind::Arrow:
      out = mk_arrow(subst_rec(v, repl, t->a, memo), subst_rec(v, repl, t->b, memo));
      break;
    case TypeKind::Union:
      out = mk_union(subst_rec(v, repl, t->a, memo), subst_rec(v, repl, t->b, memo));
      break;
    case TypeKind::Mu: {
      // t->name != v here, otherwise v would not be free in t.
      TypeRef body = t->a;
      Name binder = t->name;
      if (repl->has_free(binder)) {
        std::string fresh = str(binder);
        Name fn;
        do {
          fresh += '\'';
          fn = intern(fresh);
        } while (fn == v || repl->has_free(fn) || body->has_free(fn));
        TypeRef fresh_var = t->binder_sort == Sort::Datatype ? mk_dvar(fresh) : mk_tvar(fresh);
        std::unordered_map<TypeRef, TypeRef> inner;
        body = subst_rec(binder, fresh_var, body, inner);
        binder = fn;
      }
      out = make(TypeKind::Mu, binder, t->binder_sort, subst_rec(v, repl, body, memo), nullptr);
      break;
    }
  }
  memo.emplace(t, out);
  return out;
}

}  // namespace

TypeRef subst_type(Name v, Sort var_sort, TypeRef repl, TypeRef a) {
  if (var_sort == Sort::Datatype && !(repl->well_sorted && repl->sort == Sort::Datatype))
    throw sort_mismatch("substituting a non-datatype for a datatype variable");
  std::unordered_map<TypeRef, TypeRef> memo;
  return subst_rec(v, repl, a, memo);
}

TypeRef unfold_mu(TypeRef t) {
  if (t->kind != TypeKind::Mu) throw internal_error("unfold_mu on a non-mu type");
  return subst_type(t->name, t->binder_sort, t, t->a);
}

std::vector<TypeRef> flatten_union(TypeRef t) {
  std::vector<TypeRef> out;
  std::vector<TypeRef> stack{t};
  while (!stack.empty()) {
    TypeRef cur = stack.back();
    stack.pop_back();
    if (cur->kind == TypeKind::Union) {
      stack.push_back(cur->b);
      stack.push_back(cur->a);
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

TypeRef union_of(const std::vector<TypeRef>& parts) {
  if (parts.empty()) throw internal_error("union_of on empty list");
  TypeRef acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = mk_union(acc, parts[i]);
  return acc;
}

TypeRef union_flat_dedup(const std::vector<TypeRef>& parts) {
  std::vector<TypeRef> comps;
  for (TypeRef p : parts)
    for (TypeRef c : flatten_union(p))
      if (std::find(comps.begin(), comps.end(), c) == comps.end()) comps.push_back(c);
  return union_of(comps);
}

std::vector<TypeRef> nary_components(TypeRef t) {
  std::vector<TypeRef> out;
  int fuel = 4096 + t->size * 64;
  // Recursive flattening through mu unfoldings; contractiveness bounds the
  // union/mu prefix above any constructor.
  std::vector<TypeRef> stack{t};
  while (!stack.empty()) {
    if (--fuel <= 0) throw internal_error("nary_components: fuel exhausted (non-contractive?)");
    TypeRef cur = stack.back();
    stack.pop_back();
    switch (cur->kind) {
      case TypeKind::Union:
        stack.push_back(cur->b);
        stack.push_back(cur->a);
        break;
      case TypeKind::Mu:
        stack.push_back(unfold_mu(cur));
        break;
      default:
        out.push_back(cur);
    }
  }
  return out;
}

LookupSym sym_ident(const std::string& name) { return LookupSym{LookupSym::K::Ident, intern(name)}; }
LookupSym sym_app() { return LookupSym{LookupSym::K::App, nullptr}; }
LookupSym sym_arrow() { return LookupSym{LookupSym::K::Arrow, nullptr}; }

namespace {

void lookup_rec(TypeRef t, const Position& pi, size_t i, std::set<LookupSym>& out, long& fuel) {
  if (--fuel <= 0) throw internal_error("lookup: fuel exhausted");
  switch (t->kind) {
    case TypeKind::DVar:
    case TypeKind::TVar:
    case TypeKind::Atom:
      if (i != pi.size()) throw undefined_lookup("lookup descends into a leaf");
      out.insert(LookupSym{LookupSym::K::Ident, t->name});
      return;
    case TypeKind::Comp:
    case TypeKind::Arrow: {
      if (i == pi.size()) {
        out.insert(t->kind == TypeKind::Comp ? sym_app() : sym_arrow());
        return;
      }
      char c = pi[i];
      if (c != '1' && c != '2') throw undefined_lookup("lookup: bad position index");
      lookup_rec(c == '1' ? t->a : t->b, pi, i + 1, out, fuel);
      return;
    }
    case TypeKind::Union:
      lookup_rec(t->a, pi, i, out, fuel);
      lookup_rec(t->b, pi, i, out, fuel);
      return;
    case TypeKind::Mu:
      lookup_rec(unfold_mu(t), pi, i, out, fuel);
      return;
  }
}

}  // namespace

std::set<LookupSym> lookup(TypeRef a, const Position& pi) {
  std::set<LookupSym> out;
  long fuel = 65536 + static_cast<long>(a->size) * (static_cast<long>(pi.size()) + 2) * 1024;
  lookup_rec(a, pi, 0, out, fuel);
  return out;
}

}  // namespace cap
