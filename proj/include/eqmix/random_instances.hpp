#pragma once

// Seeded random instances for the soundness audit.
//
// The generator is std::mt19937_64 (its output sequence is fixed by the C++
// standard); bounded integers are drawn by rejection from the raw 64-bit
// stream, so a seed reproduces the same instances on every platform.

#include <cstddef>
#include <cstdint>
#include <random>

#include "eqmix/bounds.hpp"
#include "eqmix/walk.hpp"

namespace eqmix {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Random group of order in [2, max_order] (1-3 cyclic factors), random
/// subgroup from up to two generators, random coset and a random rational
/// distribution (integer weights / total).
GroupInstance random_group_instance(Rng& rng, std::size_t max_order, bool full_subgroup = false);

/// Random simple d-regular graph on n vertices by the pairing model with restarts.
Graph random_regular_graph(Rng& rng, std::size_t n, std::size_t d);

/// Random regular graph with at most max_vertices vertices; the partition is
/// the coarsest equitable refinement of {{v}, V \ {v}} for a random vertex v,
/// and the start block is {v}'s block.
GraphInstance random_graph_instance(Rng& rng, std::size_t max_vertices);

}  // namespace eqmix
