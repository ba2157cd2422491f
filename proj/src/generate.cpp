#include "cap/generate.hpp"

#include <random>
#include <string>
#include <vector>

namespace cap {

namespace {

const char* kAtoms[] = {"a", "b", "c", "d", "nil", "cons"};

struct Binder {
  std::string name;
  Sort sort;
  bool guarded;  // beneath at least one @ or -> since its mu
};

class Gen {
 public:
  Gen(uint64_t seed, GenOptions opts) : rng_(seed), opts_(opts) {}

  // Produces at most `budget` constructors.
  TypeRef gen(Sort want, int budget) {
    enum { kComp, kArrow, kUnion, kMu, kLeaf };
    int choice = kLeaf;
    if (budget >= 2) {
      for (;;) {
        int c = static_cast<int>(rng_() % 5);
        if (c == kArrow && want == Sort::Datatype) continue;
        if (c == kMu && (mu_depth_ >= opts_.max_mu_depth || budget < 2)) continue;
        if ((c == kComp || c == kArrow || c == kUnion) && budget < 3) continue;
        choice = c;
        break;
      }
    }
    switch (choice) {
      case kComp:
      case kArrow: {
        int left = 1 + static_cast<int>(rng_() % static_cast<uint64_t>(budget - 2));
        int right = budget - 1 - left;
        guard_all();
        TypeRef x = gen(choice == kComp ? Sort::Datatype : Sort::Type, left);
        TypeRef y = gen(Sort::Type, right);
        unguard_restore();
        return choice == kComp ? mk_comp(x, y) : mk_arrow(x, y);
      }
      case kUnion: {
        int max_w = opts_.max_union_width;
        if (max_w > budget - 1) max_w = budget - 1;
        int w = 2 + (max_w > 2 ? static_cast<int>(rng_() % static_cast<uint64_t>(max_w - 1)) : 0);
        int pool = budget - (w - 1);  // w-1 union nodes
        std::vector<int> shares(static_cast<size_t>(w), 1);
        for (int extra = pool - w; extra > 0; --extra)
          ++shares[rng_() % shares.size()];
        TypeRef acc = gen(want, shares[0]);
        for (int i = 1; i < w; ++i) acc = mk_union(acc, gen(want, shares[static_cast<size_t>(i)]));
        return acc;
      }
      case kMu: {
        ++mu_depth_;
        bool dvar = want == Sort::Datatype || (rng_() & 1);
        std::string name =
            dvar ? "r" + std::to_string(fresh_++) : "R" + std::to_string(fresh_++);
        env_.push_back(Binder{name, dvar ? Sort::Datatype : Sort::Type, false});
        TypeRef body = gen(dvar ? Sort::Datatype : want, budget - 1);
        env_.pop_back();
        --mu_depth_;
        return mk_mu(name, dvar ? Sort::Datatype : Sort::Type, body);
      }
      default:
        return leaf(want);
    }
  }

 private:
  TypeRef leaf(Sort want) {
    std::vector<const Binder*> usable;
    for (const Binder& b : env_)
      if (b.guarded && (want == Sort::Type || b.sort == Sort::Datatype))
        usable.push_back(&b);
    if (!usable.empty() && rng_() % 3 == 0) {
      const Binder* b = usable[rng_() % usable.size()];
      return b->sort == Sort::Datatype ? mk_dvar(b->name) : mk_tvar(b->name);
    }
    return mk_atom(kAtoms[rng_() % (sizeof(kAtoms) / sizeof(kAtoms[0]))]);
  }

  void guard_all() {
    guard_stack_.push_back({});
    for (size_t i = 0; i < env_.size(); ++i)
      if (!env_[i].guarded) {
        env_[i].guarded = true;
        guard_stack_.back().push_back(i);
      }
  }

  void unguard_restore() {
    for (size_t i : guard_stack_.back()) env_[i].guarded = false;
    guard_stack_.pop_back();
  }

  std::mt19937_64 rng_;
  GenOptions opts_;
  std::vector<Binder> env_;
  std::vector<std::vector<size_t>> guard_stack_;
  int mu_depth_ = 0;
  int fresh_ = 0;
};

}  // namespace

TypeRef generate(uint64_t seed, int size, Sort sort, GenOptions opts) {
  Gen g(seed, opts);
  return g.gen(sort, size);
}

}  // namespace cap
