#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cap/automaton.hpp"
#include "cap/type.hpp"

namespace cap {

enum class RelationKind { Subtype, Equivalence };

struct GfpStats {
  size_t nodes = 0;          // |U|
  size_t edges = 0;          // sum over p of u(p)
  size_t size_u = 0;         // nodes + edges
  size_t iterations = 0;
  size_t invalidations = 0;
  size_t reenqueues = 0;

  void accumulate(const GfpStats& o) {
    nodes += o.nodes;
    edges += o.edges;
    size_u += o.size_u;
    iterations += o.iterations;
    invalidations += o.invalidations;
    reenqueues += o.reenqueues;
  }
};

struct GfpOptions {
  // Seed the worklist so strongly connected components pop in reverse
  // topological order (children before parents). Off: plain discovery order.
  bool scc_order = true;
  // Re-establish the S-density invariant after every iteration (slow; for
  // tests).
  bool verify_invariants = false;
};

// The two-phase engine: buildUniverse over pairs of automaton states, then
// refinement of the (W, S, F) partition until the worklist empties. One
// instance per query.
class GfpEngine {
 public:
  enum class Status : uint8_t { InW, InS, InF };

  struct Node {
    uint32_t left, right;             // global state ids
    std::vector<uint32_t> children;   // pair ids, deduplicated
    std::vector<uint32_t> parents;    // pair ids, distinct
    Status status = Status::InW;
    int union_data = -1;
  };

  GfpEngine(const Automaton& ma, const Automaton& mb, RelationKind kind, GfpOptions opts = {});

  bool run();

  void build_universe();

  // Child pairs of a pair of (global) states, per the relation's
  // decomposition table.
  std::vector<std::pair<uint32_t, uint32_t>> children_of(uint32_t l, uint32_t r) const;

  bool check(uint32_t pair_id) const;

  // The seeded pop order of the worklist.
  std::vector<uint32_t> seed_order() const;

  const GfpStats& stats() const { return stats_; }
  size_t universe_nodes() const { return nodes_.size(); }
  const Node& node(uint32_t id) const { return nodes_[id]; }
  uint32_t root() const { return root_; }
  std::optional<uint32_t> find_pair(uint32_t l, uint32_t r) const;
  uint32_t right_offset() const { return right_offset_; }
  // Strongly connected component index of each pair node.
  const std::vector<uint32_t>& scc_of() const { return scc_of_; }

 private:
  struct UnionData {
    int n = 0, m = 0;
    std::vector<int> cnt_left;   // per i: number of j with slot (i, j) not in F
    std::vector<int> cnt_right;  // per j: number of i
    std::unordered_map<uint32_t, std::vector<std::pair<int, int>>> occurrences;
  };

  const Label& label(uint32_t gid) const;
  uint32_t gsucc(uint32_t gid, int i) const;
  uint32_t pair_id(uint32_t l, uint32_t r);
  void invalidate(uint32_t p, std::vector<uint32_t>& stack);
  void compute_sccs();
  void verify_invariant() const;

  const Automaton& ma_;
  const Automaton& mb_;
  RelationKind kind_;
  GfpOptions opts_;
  uint32_t right_offset_ = 0;
  uint32_t root_ = 0;
  bool built_ = false;
  std::vector<Node> nodes_;
  std::vector<UnionData> unions_;
  std::unordered_map<uint64_t, uint32_t> index_;
  std::vector<uint32_t> discovery_;  // BFS order
  std::vector<uint32_t> scc_of_;
  GfpStats stats_;
};

// Compile both sides and answer whether the relation holds, accumulating
// statistics when requested.
bool gfp(TypeRef a, TypeRef b, RelationKind kind, GfpStats* stats = nullptr,
         GfpOptions opts = {});

}  // namespace cap
