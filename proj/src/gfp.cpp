#include "cap/gfp.hpp"

#include <algorithm>

#include "cap/errors.hpp"

namespace cap {

namespace {
uint64_t key(uint32_t l, uint32_t r) { return (static_cast<uint64_t>(l) << 32) | r; }
}  // namespace

GfpEngine::GfpEngine(const Automaton& ma, const Automaton& mb, RelationKind kind,
                     GfpOptions opts)
    : ma_(ma), mb_(mb), kind_(kind), opts_(opts) {
  right_offset_ = (&ma_ == &mb_) ? 0 : static_cast<uint32_t>(ma_.states.size());
}

const Label& GfpEngine::label(uint32_t gid) const {
  if (gid < right_offset_ || &ma_ == &mb_) {
    if (gid < ma_.states.size()) return ma_.states[gid].label;
  }
  return mb_.states[gid - right_offset_].label;
}

uint32_t GfpEngine::gsucc(uint32_t gid, int i) const {
  if (gid < right_offset_ || &ma_ == &mb_) {
    if (gid < ma_.states.size()) return ma_.states[gid].next[static_cast<size_t>(i - 1)];
  }
  return mb_.states[gid - right_offset_].next[static_cast<size_t>(i - 1)] + right_offset_;
}

std::vector<std::pair<uint32_t, uint32_t>> GfpEngine::children_of(uint32_t l, uint32_t r) const {
  const Label& la = label(l);
  const Label& lb = label(r);
  std::vector<std::pair<uint32_t, uint32_t>> out;
  if (la.k == Label::K::App && lb.k == Label::K::App) {
    out = {{gsucc(l, 1), gsucc(r, 1)}, {gsucc(l, 2), gsucc(r, 2)}};
  } else if (la.k == Label::K::Arrow && lb.k == Label::K::Arrow) {
    if (kind_ == RelationKind::Subtype)
      out = {{gsucc(r, 1), gsucc(l, 1)}, {gsucc(l, 2), gsucc(r, 2)}};
    else
      out = {{gsucc(l, 1), gsucc(r, 1)}, {gsucc(l, 2), gsucc(r, 2)}};
  } else if (la.k == Label::K::Union && lb.k == Label::K::Union) {
    for (int i = 1; i <= la.arity; ++i)
      for (int j = 1; j <= lb.arity; ++j) out.emplace_back(gsucc(l, i), gsucc(r, j));
  } else if (la.k == Label::K::Union) {
    for (int i = 1; i <= la.arity; ++i) out.emplace_back(gsucc(l, i), r);
  } else if (lb.k == Label::K::Union) {
    for (int j = 1; j <= lb.arity; ++j) out.emplace_back(l, gsucc(r, j));
  }
  return out;
}

uint32_t GfpEngine::pair_id(uint32_t l, uint32_t r) {
  auto [it, fresh] = index_.emplace(key(l, r), static_cast<uint32_t>(nodes_.size()));
  if (fresh) {
    Node n;
    n.left = l;
    n.right = r;
    nodes_.push_back(std::move(n));
  }
  return it->second;
}

std::optional<uint32_t> GfpEngine::find_pair(uint32_t l, uint32_t r) const {
  auto it = index_.find(key(l, r));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void GfpEngine::build_universe() {
  if (built_) return;
  built_ = true;
  root_ = pair_id(ma_.initial, mb_.initial + right_offset_);
  std::vector<uint32_t> queue{root_};
  discovery_.push_back(root_);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    uint32_t p = queue[qi];
    auto raw = children_of(nodes_[p].left, nodes_[p].right);
    std::vector<uint32_t> kids;
    for (auto [cl, cr] : raw) {
      size_t before = nodes_.size();
      uint32_t c = pair_id(cl, cr);
      if (std::find(kids.begin(), kids.end(), c) == kids.end()) kids.push_back(c);
      if (nodes_.size() > before) {
        queue.push_back(c);
        discovery_.push_back(c);
      }
    }
    nodes_[p].children = std::move(kids);
  }
  for (uint32_t p = 0; p < nodes_.size(); ++p)
    for (uint32_t c : nodes_[p].children) nodes_[c].parents.push_back(p);

  size_t edges = 0;
  for (const Node& n : nodes_) edges += n.children.size();
  stats_.nodes = nodes_.size();
  stats_.edges = edges;
  stats_.size_u = nodes_.size() + edges;

  // Counting tables for union/union pairs.
  for (uint32_t p = 0; p < nodes_.size(); ++p) {
    const Label& la = label(nodes_[p].left);
    const Label& lb = label(nodes_[p].right);
    if (la.k != Label::K::Union || lb.k != Label::K::Union) continue;
    UnionData ud;
    ud.n = la.arity;
    ud.m = lb.arity;
    ud.cnt_left.assign(static_cast<size_t>(ud.n), ud.m);
    ud.cnt_right.assign(static_cast<size_t>(ud.m), ud.n);
    for (int i = 1; i <= ud.n; ++i)
      for (int j = 1; j <= ud.m; ++j) {
        uint32_t c = *find_pair(gsucc(nodes_[p].left, i), gsucc(nodes_[p].right, j));
        ud.occurrences[c].emplace_back(i - 1, j - 1);
      }
    nodes_[p].union_data = static_cast<int>(unions_.size());
    unions_.push_back(std::move(ud));
  }

  compute_sccs();
}

void GfpEngine::compute_sccs() {
  // Iterative Tarjan over the children graph. Components complete in
  // children-first order, which is exactly the pop order we want.
  const uint32_t n = static_cast<uint32_t>(nodes_.size());
  scc_of_.assign(n, UINT32_MAX);
  std::vector<uint32_t> idx(n, UINT32_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<uint32_t> stack;
  uint32_t counter = 0, comp = 0;

  struct Frame {
    uint32_t v;
    size_t child = 0;
  };
  std::vector<Frame> call;
  for (uint32_t s = 0; s < n; ++s) {
    if (idx[s] != UINT32_MAX) continue;
    call.push_back({s});
    idx[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < nodes_[f.v].children.size()) {
        uint32_t w = nodes_[f.v].children[f.child++];
        if (idx[w] == UINT32_MAX) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        uint32_t v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == idx[v]) {
          for (;;) {
            uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc_of_[w] = comp;
            if (w == v) break;
          }
          ++comp;
        }
      }
    }
  }
}

std::vector<uint32_t> GfpEngine::seed_order() const {
  if (!opts_.scc_order) return discovery_;
  // Pop pairs in increasing component index: Tarjan emits sink components
  // first, so this is reverse topological order of the condensation.
  std::vector<uint32_t> order(nodes_.size());
  for (uint32_t i = 0; i < nodes_.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](uint32_t x, uint32_t y) { return scc_of_[x] < scc_of_[y]; });
  return order;
}

bool GfpEngine::check(uint32_t p) const {
  const Node& nd = nodes_[p];
  const Label& la = label(nd.left);
  const Label& lb = label(nd.right);
  auto not_in_f = [&](uint32_t c) { return nodes_[c].status != Status::InF; };
  if (la.k == Label::K::Atom && lb.k == Label::K::Atom) return la.name == lb.name;
  if ((la.k == Label::K::App && lb.k == Label::K::App) ||
      (la.k == Label::K::Arrow && lb.k == Label::K::Arrow)) {
    for (uint32_t c : nd.children)
      if (!not_in_f(c)) return false;
    return true;
  }
  if (la.k == Label::K::Union && lb.k == Label::K::Union) {
    const UnionData& ud = unions_[static_cast<size_t>(nd.union_data)];
    for (int c : ud.cnt_left)
      if (c <= 0) return false;
    if (kind_ == RelationKind::Equivalence)
      for (int c : ud.cnt_right)
        if (c <= 0) return false;
    return true;
  }
  if (la.k == Label::K::Union) {  // union vs non-union: all components
    for (uint32_t c : nd.children)
      if (!not_in_f(c)) return false;
    return true;
  }
  if (lb.k == Label::K::Union) {
    if (kind_ == RelationKind::Subtype) {  // some component
      for (uint32_t c : nd.children)
        if (not_in_f(c)) return true;
      return false;
    }
    for (uint32_t c : nd.children)  // equivalence: all components
      if (!not_in_f(c)) return false;
    return true;
  }
  return false;  // mismatched labels
}

void GfpEngine::invalidate(uint32_t p, std::vector<uint32_t>& stack) {
  nodes_[p].status = Status::InF;
  ++stats_.invalidations;
  for (uint32_t q : nodes_[p].parents) {
    if (nodes_[q].union_data >= 0) {
      UnionData& ud = unions_[static_cast<size_t>(nodes_[q].union_data)];
      auto it = ud.occurrences.find(p);
      if (it != ud.occurrences.end())
        for (auto [i, j] : it->second) {
          --ud.cnt_left[static_cast<size_t>(i)];
          --ud.cnt_right[static_cast<size_t>(j)];
        }
    }
    if (nodes_[q].status == Status::InS) {
      nodes_[q].status = Status::InW;
      stack.push_back(q);
      ++stats_.reenqueues;
    }
  }
}

void GfpEngine::verify_invariant() const {
  for (uint32_t p = 0; p < nodes_.size(); ++p)
    if (nodes_[p].status == Status::InS && !check(p))
      throw internal_error("gfp invariant violated: pair in S fails check");
}

bool GfpEngine::run() {
  build_universe();
  std::vector<uint32_t> order = seed_order();
  std::vector<uint32_t> stack(order.rbegin(), order.rend());
  while (!stack.empty()) {
    uint32_t p = stack.back();
    stack.pop_back();
    if (nodes_[p].status != Status::InW) continue;
    ++stats_.iterations;
    if (stats_.iterations > stats_.size_u)
      throw internal_error("gfp: iteration bound exceeded");
    if (check(p))
      nodes_[p].status = Status::InS;
    else
      invalidate(p, stack);
    if (opts_.verify_invariants) verify_invariant();
  }
  return nodes_[root_].status == Status::InS;
}

bool gfp(TypeRef a, TypeRef b, RelationKind kind, GfpStats* stats, GfpOptions opts) {
  Automaton ma = compile(a);
  Automaton mb = compile(b);
  GfpEngine engine(ma, mb, kind, opts);
  bool result = engine.run();
  if (stats) stats->accumulate(engine.stats());
  return result;
}

}  // namespace cap
