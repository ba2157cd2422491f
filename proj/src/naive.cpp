#include "cap/naive.hpp"

#include <unordered_set>
#include <vector>

#include "cap/errors.hpp"

namespace cap {

bool has_mu_component(TypeRef t) {
  for (TypeRef c : flatten_union(t))
    if (c->kind == TypeKind::Mu) return true;
  return false;
}

TypeRef unfold_first_mu(TypeRef t) {
  std::vector<TypeRef> comps = flatten_union(t);
  for (TypeRef& c : comps)
    if (c->kind == TypeKind::Mu) {
      c = unfold_mu(c);
      return union_of(comps);
    }
  throw internal_error("unfold_first_mu: no mu component");
}

namespace {

struct PairHash {
  size_t operator()(const TypePair& p) const {
    return reinterpret_cast<size_t>(p.first) * 0x9e3779b97f4a7c15ull ^
           reinterpret_cast<size_t>(p.second);
  }
};

// Assumption set with an undo log. Failing alternatives roll back to the set
// that preceded them, which matches threading the set functionally through
// the algorithm.
class Trail {
 public:
  bool contains(const TypePair& p) const { return set_.count(p) != 0; }
  void add(const TypePair& p) {
    if (set_.insert(p).second) log_.push_back(p);
  }
  size_t mark() const { return log_.size(); }
  void rollback(size_t mark) {
    while (log_.size() > mark) {
      set_.erase(log_.back());
      log_.pop_back();
    }
  }
  AssumptionSet snapshot() const { return AssumptionSet(set_.begin(), set_.end()); }

 private:
  std::unordered_set<TypePair, PairHash> set_;
  std::vector<TypePair> log_;
};

bool leaf_equal(TypeRef a, TypeRef b) {
  return a == b && (a->kind == TypeKind::Atom || a->kind == TypeKind::DVar ||
                    a->kind == TypeKind::TVar);
}

}  // namespace

class NaiveRun {
 public:
  NaiveRun(const AssumptionSet& seed, TypeRef a, TypeRef b, int fuel_factor) {
    for (const TypePair& p : seed) trail_.add(p);
    long s = type_size(a) + type_size(b);
    max_depth_ = static_cast<long>(fuel_factor) * s * s;
  }

  bool eq(TypeRef a, TypeRef b) {
    TypePair goal{a, b};
    if (trail_.contains(goal)) return true;
    size_t m = trail_.mark();
    trail_.add(goal);
    Depth d(this);
    bool ok = eq_cases(a, b);
    if (!ok) trail_.rollback(m);
    return ok;
  }

  bool sub(TypeRef a, TypeRef b) {
    TypePair goal{a, b};
    if (trail_.contains(goal)) return true;
    size_t m = trail_.mark();
    trail_.add(goal);
    Depth d(this);
    bool ok = sub_cases(a, b);
    if (!ok) trail_.rollback(m);
    return ok;
  }

  AssumptionSet snapshot() const { return trail_.snapshot(); }

 private:
  struct Depth {
    explicit Depth(NaiveRun* r) : run(r) {
      if (++run->depth_ > run->max_depth_)
        throw internal_error("naive engine: recursion fuel exhausted");
    }
    ~Depth() { --run->depth_; }
    NaiveRun* run;
  };

  bool eq_cases(TypeRef a, TypeRef b) {
    if (leaf_equal(a, b)) return true;
    if (a->kind == TypeKind::Comp && b->kind == TypeKind::Comp) {
      if (!is_datatype(a->a) || !is_datatype(b->a)) return false;
      return eq(a->a, b->a) && eq(a->b, b->b);
    }
    if (a->kind == TypeKind::Arrow && b->kind == TypeKind::Arrow)
      return eq(a->a, b->a) && eq(a->b, b->b);
    if (has_mu_component(a)) return eq(unfold_first_mu(a), b);
    if (has_mu_component(b)) return eq(a, unfold_first_mu(b));
    std::vector<TypeRef> as = flatten_union(a);
    std::vector<TypeRef> bs = flatten_union(b);
    if (as.size() + bs.size() > 2) {
      // e-union-al: pick f(i) for every i, then g(j) for every j, threading
      // the assumption set; each failed alternative is rolled back by eq.
      for (TypeRef ai : as) {
        bool found = false;
        for (TypeRef bj : bs)
          if (eq(ai, bj)) {
            found = true;
            break;
          }
        if (!found) return false;
      }
      for (TypeRef bj : bs) {
        bool found = false;
        for (TypeRef ai : as)
          if (eq(ai, bj)) {
            found = true;
            break;
          }
        if (!found) return false;
      }
      return true;
    }
    return false;
  }

  bool sub_cases(TypeRef a, TypeRef b) {
    if (leaf_equal(a, b)) return true;
    if (a->kind == TypeKind::Comp && b->kind == TypeKind::Comp) {
      if (!is_datatype(a->a) || !is_datatype(b->a)) return false;
      return sub(a->a, b->a) && sub(a->b, b->b);
    }
    if (a->kind == TypeKind::Arrow && b->kind == TypeKind::Arrow)
      return sub(b->a, a->a) && sub(a->b, b->b);
    if (a->kind == TypeKind::Mu) return sub(unfold_mu(a), b);
    if (b->kind == TypeKind::Mu) return sub(a, unfold_mu(b));
    std::vector<TypeRef> as = flatten_union(a);
    if (as.size() > 1) {
      for (TypeRef ai : as)
        if (!sub(ai, b)) return false;
      return true;
    }
    std::vector<TypeRef> bs = flatten_union(b);
    if (bs.size() > 1) {
      for (TypeRef bj : bs)
        if (sub(a, bj)) return true;
      return false;
    }
    return false;
  }

  Trail trail_;
  long depth_ = 0;
  long max_depth_;
};

std::optional<AssumptionSet> NaiveEngine::eqtype(const AssumptionSet& s, TypeRef a, TypeRef b) {
  NaiveRun run(s, a, b, fuel_factor_);
  if (!run.eq(a, b)) return std::nullopt;
  return run.snapshot();
}

std::optional<AssumptionSet> NaiveEngine::subtype(const AssumptionSet& s, TypeRef a, TypeRef b) {
  NaiveRun run(s, a, b, fuel_factor_);
  if (!run.sub(a, b)) return std::nullopt;
  return run.snapshot();
}

}  // namespace cap
