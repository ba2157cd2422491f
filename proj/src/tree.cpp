#include "cap/tree.hpp"

#include <map>
#include <utility>

#include "cap/errors.hpp"

namespace cap {

FTreeRef ft_ident(const std::string& name) {
  auto t = std::make_shared<FTree>();
  t->k = FTree::K::Ident;
  t->name = intern(name);
  return t;
}
FTreeRef ft_cut() {
  auto t = std::make_shared<FTree>();
  t->k = FTree::K::Cut;
  return t;
}
namespace {
FTreeRef ft_node(FTree::K k, FTreeRef a, FTreeRef b) {
  auto t = std::make_shared<FTree>();
  t->k = k;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
}  // namespace
FTreeRef ft_app(FTreeRef a, FTreeRef b) { return ft_node(FTree::K::App, std::move(a), std::move(b)); }
FTreeRef ft_arrow(FTreeRef a, FTreeRef b) {
  return ft_node(FTree::K::Arrow, std::move(a), std::move(b));
}
FTreeRef ft_union(FTreeRef a, FTreeRef b) {
  return ft_node(FTree::K::Union, std::move(a), std::move(b));
}

namespace {

FTreeRef truncate_rec(TypeRef t, int k, long& fuel) {
  if (--fuel <= 0) throw internal_error("truncate: fuel exhausted (non-contractive?)");
  if (k == 0) return ft_cut();
  switch (t->kind) {
    case TypeKind::DVar:
    case TypeKind::TVar:
    case TypeKind::Atom:
      return ft_ident(str(t->name));
    case TypeKind::Comp:
      return ft_app(truncate_rec(t->a, k - 1, fuel), truncate_rec(t->b, k - 1, fuel));
    case TypeKind::Arrow:
      return ft_arrow(truncate_rec(t->a, k - 1, fuel), truncate_rec(t->b, k - 1, fuel));
    case TypeKind::Union:
      return ft_union(truncate_rec(t->a, k, fuel), truncate_rec(t->b, k, fuel));
    case TypeKind::Mu:
      return truncate_rec(unfold_mu(t), k, fuel);
  }
  throw internal_error("truncate: unreachable");
}

}  // namespace

FTreeRef truncate(TypeRef a, int k) {
  long fuel = 65536 + static_cast<long>(a->size) * (k + 1) * 65536L;
  return truncate_rec(a, k, fuel);
}

std::vector<FTreeRef> ftree_components(const FTreeRef& t) {
  std::vector<FTreeRef> out;
  std::vector<FTreeRef> stack{t};
  while (!stack.empty()) {
    FTreeRef cur = stack.back();
    stack.pop_back();
    if (cur->k == FTree::K::Union) {
      stack.push_back(cur->b);
      stack.push_back(cur->a);
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

namespace {

using Memo = std::map<std::pair<const FTree*, const FTree*>, bool>;

bool leaf_pair(const FTree& x, const FTree& y) {
  return (x.k == FTree::K::Ident && y.k == FTree::K::Ident && x.name == y.name) ||
         (x.k == FTree::K::Cut && y.k == FTree::K::Cut);
}

bool eq_rec(const FTreeRef& x, const FTreeRef& y, Memo& memo) {
  auto key = std::make_pair(x.get(), y.get());
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool res = false;
  auto xs = ftree_components(x);
  auto ys = ftree_components(y);
  if (xs.size() + ys.size() > 2) {
    // e-union: find f : 1..n -> 1..m and g : 1..m -> 1..n.
    res = true;
    for (const auto& xi : xs) {
      bool found = false;
      for (const auto& yj : ys)
        if (eq_rec(xi, yj, memo)) {
          found = true;
          break;
        }
      if (!found) {
        res = false;
        break;
      }
    }
    if (res)
      for (const auto& yj : ys) {
        bool found = false;
        for (const auto& xi : xs)
          if (eq_rec(xi, yj, memo)) {
            found = true;
            break;
          }
        if (!found) {
          res = false;
          break;
        }
      }
  } else if (leaf_pair(*x, *y)) {
    res = true;
  } else if (x->k == FTree::K::App && y->k == FTree::K::App) {
    res = eq_rec(x->a, y->a, memo) && eq_rec(x->b, y->b, memo);
  } else if (x->k == FTree::K::Arrow && y->k == FTree::K::Arrow) {
    res = eq_rec(x->a, y->a, memo) && eq_rec(x->b, y->b, memo);
  }
  memo[key] = res;
  return res;
}

bool sub_rec(const FTreeRef& x, const FTreeRef& y, Memo& memo) {
  auto key = std::make_pair(x.get(), y.get());
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool res = false;
  auto xs = ftree_components(x);
  auto ys = ftree_components(y);
  if (xs.size() > 1) {
    res = true;
    for (const auto& xi : xs)
      if (!sub_rec(xi, y, memo)) {
        res = false;
        break;
      }
  } else if (ys.size() > 1) {
    for (const auto& yj : ys)
      if (sub_rec(x, yj, memo)) {
        res = true;
        break;
      }
  } else if (leaf_pair(*x, *y)) {
    res = true;
  } else if (x->k == FTree::K::App && y->k == FTree::K::App) {
    res = sub_rec(x->a, y->a, memo) && sub_rec(x->b, y->b, memo);
  } else if (x->k == FTree::K::Arrow && y->k == FTree::K::Arrow) {
    res = sub_rec(y->a, x->a, memo) && sub_rec(x->b, y->b, memo);
  }
  memo[key] = res;
  return res;
}

}  // namespace

bool tree_eq(const FTreeRef& t1, const FTreeRef& t2) {
  Memo memo;
  return eq_rec(t1, t2, memo);
}

bool tree_sub(const FTreeRef& t1, const FTreeRef& t2) {
  Memo memo;
  return sub_rec(t1, t2, memo);
}

bool ftree_equal(const FTreeRef& t1, const FTreeRef& t2) {
  if (t1->k != t2->k) return false;
  switch (t1->k) {
    case FTree::K::Ident:
      return t1->name == t2->name;
    case FTree::K::Cut:
      return true;
    default:
      return ftree_equal(t1->a, t2->a) && ftree_equal(t1->b, t2->b);
  }
}

std::string render_ftree(const FTreeRef& t) {
  switch (t->k) {
    case FTree::K::Ident:
      return "'" + str(t->name);
    case FTree::K::Cut:
      return "#";
    case FTree::K::App:
      return "(" + render_ftree(t->a) + " @ " + render_ftree(t->b) + ")";
    case FTree::K::Arrow:
      return "(" + render_ftree(t->a) + " -> " + render_ftree(t->b) + ")";
    case FTree::K::Union:
      return "(" + render_ftree(t->a) + " + " + render_ftree(t->b) + ")";
  }
  return "?";
}

}  // namespace cap
