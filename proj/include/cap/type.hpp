#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cap/names.hpp"

namespace cap {

enum class TypeKind { DVar, TVar, Atom, Comp, Arrow, Union, Mu };
enum class Sort { Datatype, Type };

struct Type;
using TypeRef = const Type*;

// Immutable, hash-consed mu-type node. Structural equality is pointer
// equality; all derived attributes are computed once at intern time.
struct Type {
  TypeKind kind;
  Name name = nullptr;   // DVar/TVar/Atom; for Mu, the binder
  Sort binder_sort = Sort::Type;  // Mu only
  TypeRef a = nullptr;   // Comp: datatype side; Arrow: domain; Union: left; Mu: body
  TypeRef b = nullptr;   // Comp: argument; Arrow: codomain; Union: right

  Sort sort = Sort::Type;
  bool well_sorted = true;
  bool contractive = true;
  int size = 1;  // constructor count
  std::vector<Name> free_vars;     // sorted, unique
  std::vector<Name> exposed_vars;  // free vars with an occurrence not under @ or ->
  uint32_t id = 0;

  bool is_closed() const { return free_vars.empty(); }
  bool has_free(Name v) const;
};

TypeRef mk_dvar(const std::string& name);
TypeRef mk_tvar(const std::string& name);
TypeRef mk_atom(const std::string& name);
TypeRef mk_comp(TypeRef d, TypeRef a);
TypeRef mk_arrow(TypeRef dom, TypeRef cod);
TypeRef mk_union(TypeRef l, TypeRef r);
TypeRef mk_mu(const std::string& binder, Sort binder_sort, TypeRef body);

bool is_contractive(TypeRef t);
bool is_well_sorted(TypeRef t);
bool is_datatype(TypeRef t);
int type_size(TypeRef t);

// Capture-avoiding [repl/v]a. var_sort is the sort of the variable being
// replaced; substituting a non-datatype for a datatype variable throws.
TypeRef subst_type(Name v, Sort var_sort, TypeRef repl, TypeRef a);

// One head unfolding of a Mu node: [mu V.A / V]A.
TypeRef unfold_mu(TypeRef t);

// Components of a maximal union, left to right, duplicates kept. Purely
// syntactic: Mu components are not unfolded. Singleton list if t is not a
// union.
std::vector<TypeRef> flatten_union(TypeRef t);

// Left-associated union of the given parts (parts must be nonempty).
TypeRef union_of(const std::vector<TypeRef>& parts);

// Union used when the checker composes result types: flattens the parts and
// drops syntactic duplicates (idempotence), keeping first-occurrence order.
TypeRef union_flat_dedup(const std::vector<TypeRef>& parts);

// Components of the n-ary maximal union at the tree level: unions are
// flattened through head mu-unfoldings. Every returned component has an
// atom/variable/@/-> head.
std::vector<TypeRef> nary_components(TypeRef t);

// Positions are strings over '1' and '2'; "" is the root.
using Position = std::string;

struct LookupSym {
  enum class K { Ident, App, Arrow };
  K k = K::Ident;
  Name name = nullptr;  // Ident only

  friend bool operator==(const LookupSym& x, const LookupSym& y) {
    return x.k == y.k && x.name == y.name;
  }
  friend bool operator<(const LookupSym& x, const LookupSym& y) {
    if (x.k != y.k) return x.k < y.k;
    return x.name < y.name;
  }
};

LookupSym sym_ident(const std::string& name);
LookupSym sym_app();
LookupSym sym_arrow();

// The symbols type a admits at position pi (Def. of lookup). Throws
// undefined_lookup when no clause applies.
std::set<LookupSym> lookup(TypeRef a, const Position& pi);

}  // namespace cap
