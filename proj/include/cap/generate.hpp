#pragma once

#include <cstdint>

#include "cap/type.hpp"

namespace cap {

struct GenOptions {
  int max_union_width = 4;
  int max_mu_depth = 3;
};

// Pseudo-random closed, well-sorted, contractive mu-type with at most `size`
// constructors; deterministic in the seed.
TypeRef generate(uint64_t seed, int size, Sort sort, GenOptions opts = {});

}  // namespace cap
