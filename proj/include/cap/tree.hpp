#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cap/type.hpp"

namespace cap {

// Finite truncation of the infinite tree of a mu-type. Unions stay binary
// here; Cut is the distinguished leaf marking where the tree was cut.
struct FTree;
using FTreeRef = std::shared_ptr<const FTree>;

struct FTree {
  enum class K { Ident, App, Arrow, Union, Cut };
  K k = K::Cut;
  Name name = nullptr;  // Ident
  FTreeRef a, b;
};

FTreeRef ft_ident(const std::string& name);
FTreeRef ft_cut();
FTreeRef ft_app(FTreeRef a, FTreeRef b);
FTreeRef ft_arrow(FTreeRef a, FTreeRef b);
FTreeRef ft_union(FTreeRef a, FTreeRef b);

// cut(toBTree(a), k), computed directly on the mu-type. The union connector
// does not consume depth; mu binders unfold in place.
FTreeRef truncate(TypeRef a, int k);

// Tree-level equivalence and subtyping (the coinductive rules with the mu
// rules dropped; on finite trees they are plain structural recursions).
bool tree_eq(const FTreeRef& t1, const FTreeRef& t2);
bool tree_sub(const FTreeRef& t1, const FTreeRef& t2);

// Plain structural identity, for test assertions.
bool ftree_equal(const FTreeRef& t1, const FTreeRef& t2);

std::string render_ftree(const FTreeRef& t);

// Maximal-union components of a finite tree, left to right.
std::vector<FTreeRef> ftree_components(const FTreeRef& t);

}  // namespace cap
