#include "cap/compat.hpp"

#include <algorithm>

#include "cap/errors.hpp"

namespace cap {

std::set<Position> mpos(const std::set<Position>& positions) {
  std::set<Position> out;
  for (const Position& pi : positions) {
    bool maximal = true;
    for (const Position& rho : positions)
      if (rho.size() > pi.size() && rho.compare(0, pi.size(), pi) == 0) {
        maximal = false;
        break;
      }
    if (maximal) out.insert(pi);
  }
  return out;
}

std::set<Position> cpos(const PatternRef& p, const PatternRef& q) {
  std::set<Position> pp = positions(p);
  std::set<Position> qq = positions(q);
  std::set<Position> common;
  std::set_intersection(pp.begin(), pp.end(), qq.begin(), qq.end(),
                        std::inserter(common, common.begin()));
  std::set<Position> out;
  for (const Position& pi : mpos(common))
    if (!subsumes(subpattern_at(p, pi), subpattern_at(q, pi))) out.insert(pi);
  return out;
}

namespace {

bool pcomp_rec(const PatternRef& p, TypeRef a, const PatternRef& q, TypeRef b) {
  if (p->k == Pattern::K::Comp && q->k == Pattern::K::Comp) {
    if (a->kind != TypeKind::Comp || b->kind != TypeKind::Comp)
      throw internal_error("pcomp: compound pattern with a non-@ type");
    return pcomp_rec(p->a, a->a, q->a, b->a) && pcomp_rec(p->b, a->b, q->b, b->b);
  }
  if (p->k == Pattern::K::Matchable) return true;
  if (p->k == Pattern::K::Const && q->k == Pattern::K::Const && p->name == q->name) return true;
  std::set<LookupSym> sa = lookup(a, "");
  std::set<LookupSym> sb = lookup(b, "");
  for (const LookupSym& s : sa)
    if (sb.count(s)) return true;
  return false;
}

}  // namespace

bool pcomp(const TypedPattern& tp, const TypedPattern& tq) {
  return pcomp_rec(tp.pattern, tp.ty, tq.pattern, tq.ty);
}

bool comp(const TypedPattern& tp, const TypedPattern& tq, const Engine& engine) {
  if (!pcomp(tp, tq)) return true;
  return engine.subtype(tq.ty, tp.ty);
}

bool list_compatible(const std::vector<TypedPattern>& branches, const Engine& engine) {
  for (size_t i = 0; i < branches.size(); ++i)
    for (size_t j = i + 1; j < branches.size(); ++j)
      if (!comp(branches[i], branches[j], engine)) return false;
  return true;
}

}  // namespace cap
