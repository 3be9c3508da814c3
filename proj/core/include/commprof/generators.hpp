#pragma once

#include <cstddef>
#include <cstdint>

#include "commprof/graph.hpp"

namespace commprof {

/// Uniform random graph with `node_count` nodes and round(n * mean_degree / 2)
/// distinct edges (G(n, m) model). Deterministic for a given seed.
Graph random_sparse_graph(std::size_t node_count, double mean_degree, std::uint64_t seed);

/// Sparse graph with planted communities: consecutive blocks of
/// `community_size` nodes (the last block absorbs the remainder) and
/// round(n * mean_degree / 2) distinct edges, a `mixing` fraction of them
/// between blocks and the rest uniformly inside blocks.
Graph sparse_community_graph(std::size_t node_count, double mean_degree, std::size_t community_size,
                             double mixing, std::uint64_t seed);

/// `count` cliques of `size` nodes; consecutive cliques joined by a single edge
/// (a ring when `ring` is set, otherwise a chain).
Graph clique_chain(std::size_t count, std::size_t size, bool ring = false);

/// Planted partition: `groups` blocks of `size` nodes, edge probability p_in
/// inside a block and p_out across blocks.
Graph planted_partition(std::size_t groups, std::size_t size, double p_in, double p_out,
                        std::uint64_t seed);

/// Zachary's karate club (34 members, 78 ties), labelled 1..34.
Graph karate_club();

}  // namespace commprof
